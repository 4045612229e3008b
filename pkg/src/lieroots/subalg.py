"""Closed root subsets, bounded classification, and the exceptional-case checks.

Subsets are bitmasks over the canonical root indices of their parent system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .report import Check, VerificationReport, load_fixture
from .rootsys import ExactVec, RootSystem, build_root_system, cartan_matrix

DEFAULT_BUDGET = 20_000_000
ORBIT_CAP = 200_000


class BudgetExceeded(RuntimeError):
    def __init__(self, estimate: int, budget: int):
        super().__init__(f"estimated {estimate} candidates exceeds budget {budget}")
        self.estimate = estimate
        self.budget = budget


def _bits(mask: int) -> List[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class RootSubset:
    rs: RootSystem = field(repr=False, compare=False)
    mask: int = 0

    @classmethod
    def of(cls, rs: RootSystem, vectors: Iterable[ExactVec]) -> "RootSubset":
        m = 0
        for v in vectors:
            i = rs.index(v)
            if i is None:
                raise ValueError(f"{v} is not a root")
            m |= 1 << i
        return cls(rs, m)

    @classmethod
    def from_indices(cls, rs: RootSystem, idx: Iterable[int]) -> "RootSubset":
        m = 0
        for i in idx:
            m |= 1 << i
        return cls(rs, m)

    def indices(self) -> List[int]:
        return _bits(self.mask)

    def vectors(self) -> List[ExactVec]:
        return [self.rs.roots[i] for i in self.indices()]

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, v: ExactVec) -> bool:
        i = self.rs.index(v)
        return i is not None and bool(self.mask >> i & 1)

    def complement(self) -> "RootSubset":
        return RootSubset(self.rs, ((1 << len(self.rs.roots)) - 1) & ~self.mask)

    def __le__(self, other: "RootSubset") -> bool:
        return self.mask & ~other.mask == 0


def closure_indices(rs: RootSystem, idx: Iterable[int]) -> Set[int]:
    """Least superset closed under β+γ ∈ Φ (β = γ allowed, relevant only for BC)."""
    table = rs.sum_table
    have = set(idx)
    work = list(have)
    while work:
        a = work.pop()
        row = table[a]
        for b in list(have):
            c = row[b]
            if c >= 0 and c not in have:
                have.add(c)
                work.append(c)
    return have


def closure(rs: RootSystem, subset: RootSubset) -> RootSubset:
    return RootSubset.from_indices(rs, closure_indices(rs, subset.indices()))


def is_closed(rs: RootSystem, subset: RootSubset) -> bool:
    return closure(rs, subset).mask == subset.mask


def sum_is_root(rs: RootSystem, b1: ExactVec, b2: ExactVec) -> Optional[ExactVec]:
    s = b1 + b2
    return s if rs.is_root(s) else None


# --------------------------------------------------------------------------
# root lengths and subsystems


def root_lengths(rs: RootSystem) -> List:
    return sorted({r.dot(r) for r in rs.roots})


def long_mask(rs: RootSystem) -> int:
    top = root_lengths(rs)[-1]
    return RootSubset.from_indices(rs, [i for i, r in enumerate(rs.roots) if r.dot(r) == top]).mask


def short_mask(rs: RootSystem) -> int:
    low = root_lengths(rs)[0]
    return RootSubset.from_indices(rs, [i for i, r in enumerate(rs.roots) if r.dot(r) == low]).mask


def subsystem_type(rs: RootSystem, idx: Iterable[int]) -> List[str]:
    """Dynkin components of a symmetric closed set of roots, e.g. ['D3']."""
    from .weyl import classify_dynkin

    idx = sorted(set(idx))
    if not idx:
        return []
    sub = set(idx)
    # a generic regular functional picks a positive system; simple = indecomposable
    functional = ExactVec(tuple(10 ** (rs.ambient_dim - k) + k for k in range(rs.ambient_dim)))
    pos = [i for i in idx if rs.roots[i].dot(functional) > 0]
    pos_set = set(pos)
    table = rs.sum_table
    decomposable = {table[a][b] for a in pos for b in pos if table[a][b] in pos_set}
    simple = [rs.roots[i] for i in pos if i not in decomposable]
    cm = cartan_matrix(simple)
    # connected components
    comps, seen = [], set()
    for s in range(len(simple)):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in range(len(simple)):
                if y not in seen and cm[x][y]:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    names = []
    for comp in comps:
        base = [simple[i] for i in comp]
        doubled = any(rs.index(b.scale(2)) in sub for b in base)
        t = classify_dynkin(base)
        if doubled:
            names.append(f"BC{t.rank}")
        else:
            names.append(t.name)
    return sorted(names)


_ALIASES = {"D3": "A3", "C2": "B2", "D2": "A1+A1"}


def canonical_types(names: Iterable[str]) -> List[str]:
    """Normalize isomorphic low-rank names (D3 = A3, C2 = B2)."""
    out = []
    for nm in names:
        out.extend(_ALIASES.get(nm, nm).split("+"))
    return sorted(out)


# --------------------------------------------------------------------------
# parabolic orbits


def _permute(mask: int, perm: Sequence[int]) -> int:
    out = 0
    for i in _bits(mask):
        out |= 1 << perm[i]
    return out


@lru_cache(maxsize=None)
def parabolic_complement_orbits(family: str, rank: int, cap: int = ORBIT_CAP) -> Dict[int, FrozenSet[int]]:
    """For each maximal parabolic j, the Weyl orbit of Φ ∖ Σ_{q_j} as masks."""
    from .parabolic import sigma_q
    from .weyl import simple_reflection_perms

    rs = build_root_system(family, rank)
    perms = simple_reflection_perms(family, rank)
    out = {}
    for j in range(1, rank + 1):
        start = sigma_q(rs, {j}).complement().mask
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for m in frontier:
                for p in perms:
                    q = _permute(m, p)
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
                        if len(seen) > cap:
                            raise RuntimeError(f"parabolic orbit exceeds cap {cap}")
            frontier = nxt
        out[j] = frozenset(seen)
    return out


# --------------------------------------------------------------------------
# bounded enumeration of closed subsets by complement


def candidate_count(n_roots: int, s: int) -> int:
    return sum(comb(n_roots, k) for k in range(0, min(s, n_roots) + 1))


@lru_cache(maxsize=None)
def _decompositions(family: str, rank: int):
    rs = build_root_system(family, rank)
    n = len(rs.roots)
    dec = [[] for _ in range(n)]
    table = rs.sum_table
    for a in range(n):
        for b in range(a, n):
            c = table[a][b]
            if c >= 0:
                dec[c].append((a, b))
    return [tuple(d) for d in dec]


def closed_complements(rs: RootSystem, s: int, forced_in: int = 0, forced_out: int = 0) -> List[int]:
    """Every complement S (as a mask), |S| ≤ s, whose Ψ = Φ ∖ S is closed.

    Search assigns each root to S (1) or Ψ (0) with unit propagation of the
    closure constraints and a disjoint-pair lower bound on the size of S.
    """
    n = len(rs.roots)
    dec = _decompositions(rs.family, rs.rank)
    results: List[int] = []

    def propagate(assign, n_in):
        changed = True
        while changed:
            changed = False
            for rho in range(n):
                st = assign[rho]
                for a, b in dec[rho]:
                    x, y = assign[a], assign[b]
                    if st == 1:
                        if x == 0 and y == 0:
                            return -1
                        if x == 0 and y < 0:
                            assign[b] = 1
                            n_in += 1
                            changed = True
                        elif y == 0 and x < 0:
                            assign[a] = 1
                            n_in += 1
                            changed = True
                    elif x == 0 and y == 0:
                        if st < 0:
                            assign[rho] = 0
                            st = 0
                            changed = True
                if n_in > s:
                    return -1
        return n_in

    def lower_bound(assign):
        used = set()
        lb = 0
        for rho in range(n):
            if assign[rho] != 1:
                continue
            for a, b in dec[rho]:
                if assign[a] < 0 and assign[b] < 0 and a not in used and b not in used:
                    used.add(a)
                    used.add(b)
                    lb += 1
        return lb

    def pick(assign):
        for rho in range(n):
            if assign[rho] == 1:
                for a, b in dec[rho]:
                    if assign[a] < 0 and assign[b] < 0:
                        return a
        for i in range(n):
            if assign[i] < 0:
                return i
        return -1

    def dfs(assign, n_in):
        n_in = propagate(assign, n_in)
        if n_in < 0 or n_in + lower_bound(assign) > s:
            return
        v = pick(assign)
        if v < 0:
            results.append(sum(1 << i for i in range(n) if assign[i] == 1))
            return
        a0 = list(assign)
        a0[v] = 0
        dfs(a0, n_in)
        a1 = list(assign)
        a1[v] = 1
        dfs(a1, n_in + 1)

    assign = [-1] * n
    n_in = 0
    for i in range(n):
        if forced_in >> i & 1:
            assign[i] = 1
            n_in += 1
        elif forced_out >> i & 1:
            assign[i] = 0
    dfs(assign, n_in)
    results.sort(key=lambda m: (bin(m).count("1"), _bits(m)))
    return results


@dataclass
class ClassificationOutcome:
    complement: Tuple[int, ...]
    verdict: str  # full | inside-maximal-parabolic | exceptional | violation
    witness: dict = field(default_factory=dict)

    def subset(self, rs: RootSystem) -> RootSubset:
        return RootSubset.from_indices(rs, self.complement).complement()


# families in which a closed non-parabolic subset with |S| = v + 1 is expected
_EXCEPTIONS = {"B": "long-roots", "G2": "long-roots", "F4": "long-roots-plus-short-class"}


def short_classes(rs: RootSystem) -> List[int]:
    """Minimal sets of short roots closed under adding long roots."""
    lm, sm = long_mask(rs), short_mask(rs)
    longs = _bits(lm)
    table = rs.sum_table
    remaining = set(_bits(sm))
    classes = []
    while remaining:
        start = min(remaining)
        cls, work = {start}, [start]
        while work:
            a = work.pop()
            for b in longs:
                c = table[a][b]
                if c >= 0 and (sm >> c & 1) and c not in cls:
                    cls.add(c)
                    work.append(c)
        remaining -= cls
        classes.append(sum(1 << i for i in cls))
    return classes


def _exception_tag(rs: RootSystem, psi_mask: int) -> Optional[str]:
    lm = long_mask(rs)
    if psi_mask == lm:
        return "long-roots"
    if psi_mask & lm == lm:
        rest = psi_mask & ~lm
        if rest in short_classes(rs):
            return "long-roots-plus-short-class"
    return None


def classify_bounded(rs: RootSystem, s: int, budget: int = DEFAULT_BUDGET) -> List[ClassificationOutcome]:
    from .parabolic import v_of

    estimate = candidate_count(len(rs.roots), s)
    if estimate > budget:
        raise BudgetExceeded(estimate, budget)
    full = (1 << len(rs.roots)) - 1
    v = v_of(rs.family, rs.rank)
    orbits = parabolic_complement_orbits(rs.family, rs.rank)
    outcomes = []
    for S in closed_complements(rs, s):
        comp = tuple(_bits(S))
        if S == 0:
            outcomes.append(ClassificationOutcome(comp, "full", {}))
            continue
        hit = None
        for j, masks in orbits.items():
            for m in masks:
                if m & ~S == 0:
                    hit = (j, m)
                    break
            if hit:
                break
        if hit:
            outcomes.append(ClassificationOutcome(
                comp, "inside-maximal-parabolic", {"j": hit[0], "parabolic_complement": _bits(hit[1])}))
            continue
        psi = full & ~S
        sym = [i for i in _bits(psi) if psi >> rs.neg[i] & 1]
        tag = _exception_tag(rs, psi)
        witness = {"size": len(comp), "v": v, "type": subsystem_type(rs, sym)}
        if tag is not None and _EXCEPTIONS.get(rs.family) == tag and len(comp) == v + 1:
            witness["case"] = tag
            outcomes.append(ClassificationOutcome(comp, "exceptional", witness))
        else:
            witness["case"] = tag
            outcomes.append(ClassificationOutcome(comp, "violation", witness))
    return outcomes


# Dynkin type of the long-root subsystem expected for each listed exception
_EXPECTED_EXCEPTIONAL_TYPE = {"B": lambda r: [f"D{r}"], "G2": lambda r: ["A2"]}


def coarse_compatible(rs: RootSystem, comp: Iterable[int]) -> bool:
    """ρ ∈ S ⇔ 2ρ ∈ S whenever 2ρ is a root (S read as a set of coarse roots)."""
    S = set(comp)
    return all((i in S) == (d in S) for i, d in enumerate(rs.double) if d >= 0)


def classification_report(systems: Sequence[Tuple[str, int]], budget: int = DEFAULT_BUDGET,
                          s: Optional[int] = None, known: Optional[dict] = None) -> VerificationReport:
    """One check per system.  ``known`` maps a system name to documented
    violations (complements as lists of root strings); a run whose violations
    are exactly the documented ones is reported as expected-fail."""
    from .parabolic import v_of

    known = known if known is not None else load_fixture("classify_known.json")["violations"]
    report = VerificationReport("classify")
    for family, rank in systems:
        rs = build_root_system(family, rank)
        v = v_of(family, rank)
        bound = v + 1 if s is None else s
        cid = f"classify.{rs.name}"
        desc = f"closed subsets of {rs.name} with complement <= {bound}"
        try:
            outs = classify_bounded(rs, bound, budget)
        except BudgetExceeded as exc:
            report.add(Check(cid, desc, "skipped-budget", {"estimate": exc.estimate, "budget": exc.budget}))
            continue
        counts: Dict[str, int] = {}
        for o in outs:
            counts[o.verdict] = counts.get(o.verdict, 0) + 1
        viol = [{"complement": [str(rs.roots[i]) for i in o.complement],
                 "coarse_compatible": coarse_compatible(rs, o.complement), **o.witness}
                for o in outs if o.verdict == "violation"]
        exc = [{"complement_size": len(o.complement), "type": o.witness["type"], "case": o.witness["case"]}
               for o in outs if o.verdict == "exceptional"]
        # exceptions must occur exactly where listed, with |S| = v + 1 and the right type
        want = _EXPECTED_EXCEPTIONAL_TYPE.get(rs.family)
        if want is None or bound < v + 1:
            exc_ok = not exc
        else:
            exc_ok = len(exc) == 1 and canonical_types(exc[0]["type"]) == canonical_types(want(rank))
        documented = sorted(sorted(c) for c in known.get(rs.name, []))
        found = sorted(sorted(x["complement"]) for x in viol)
        if not viol:
            status = "pass" if exc_ok else "fail"
        elif exc_ok and found == documented:
            status = "expected-fail"
        else:
            status = "fail"
        report.add(Check(cid, desc, status, {"counts": counts, "exceptional": exc, "exceptional_as_listed": exc_ok,
                                             "violations": viol}))
    return report


# --------------------------------------------------------------------------
# exceptional-case generation arguments


def long_orbit(rs: RootSystem, start: int) -> Set[int]:
    """Roots reachable from ``start`` by repeatedly adding long roots."""
    longs = _bits(long_mask(rs))
    table = rs.sum_table
    have, work = {start}, [start]
    while work:
        a = work.pop()
        for b in longs:
            c = table[a][b]
            if c >= 0 and c not in have:
                have.add(c)
                work.append(c)
    return have


def exceptional_checks(rs: RootSystem) -> VerificationReport:
    from .parabolic import v_of

    report = VerificationReport("exceptional")
    name = rs.name
    fam = rs.family
    lm, sm = long_mask(rs), short_mask(rs)
    n_long, n_short = bin(lm).count("1"), bin(sm).count("1")
    if fam not in ("B", "C", "G2", "F4"):
        report.add(Check(f"exceptional.{name}.single-length", f"{name}: roots of one length (no exceptions)",
                         "pass" if fam == "BC" or lm == sm else "fail", {"lengths": [str(x) for x in root_lengths(rs)]}))
        return report
    v = v_of(fam, rs.rank)
    n = rs.rank
    expected = {
        "B": (2 * n * (n - 1), 2 * n), "C": (2 * n, 2 * n * (n - 1)),
        "G2": (6, 6), "F4": (24, 24),
    }[fam]
    report.add(Check(f"exceptional.{name}.counts", f"{name}: long/short root counts",
                     "pass" if (n_long, n_short) == expected else "fail",
                     {"long": n_long, "short": n_short, "expected": list(expected)}))
    full = (1 << len(rs.roots)) - 1
    if fam == "C":
        bad = {}
        for i0 in range(n):
            cnt = sum(1 for i in _bits(sm) if rs.roots[i].num[i0] != 0)
            if cnt != 4 * (n - 1):
                bad[i0 + 1] = cnt
        report.add(Check(f"exceptional.{name}.short-per-index",
                         f"{name}: 4(n-1) short roots involve each fixed index",
                         "fail" if bad else "pass", bad or {"count": 4 * (n - 1)}))
        report.add(Check(f"exceptional.{name}.count-exceeds",
                         f"{name}: 4(n-1) > 2n = v+1",
                         "pass" if 4 * (n - 1) > 2 * n and v + 1 == 2 * n else "fail",
                         {"4(n-1)": 4 * (n - 1), "v+1": v + 1}))
        # every closed Ψ ⊇ long roots with |Φ∖Ψ| ≤ v+1 is all of Φ
        sols = closed_complements(rs, v + 1, forced_out=lm)
        proper = [x for x in sols if x]
        report.add(Check(f"exceptional.{name}.regenerate",
                         f"{name}: long roots plus all but <= v+1 short roots close up to the whole system",
                         "fail" if proper else "pass",
                         {"proper_closed": [_bits(x) for x in proper]}))
        sizes = sorted({len(closure_indices(rs, [i] + _bits(lm))) for i in _bits(sm)})
        report.add(Check(f"exceptional.{name}.single-short-closure",
                         f"{name}: closure of the long roots and one short root (informational)",
                         "pass", {"closure_sizes": sizes, "total": len(rs.roots)}))
    if fam in ("B", "G2"):
        bad = [str(rs.roots[i]) for i in _bits(sm)
               if not sm & ~RootSubset.from_indices(rs, closure_indices(rs, [i] + _bits(lm))).mask == 0]
        report.add(Check(f"exceptional.{name}.short-generates",
                         f"{name}: one short root with all long roots generates all short roots",
                         "fail" if bad else "pass", {"failing": bad}))
        closed = is_closed(rs, RootSubset(rs, lm))
        typ = subsystem_type(rs, _bits(lm))
        want = ["A2"] if fam == "G2" else ([f"D{n}"] if n >= 3 else ["A1", "A1"])
        ok = closed and n_short == v + 1 and canonical_types(typ) == canonical_types(want)
        report.add(Check(f"exceptional.{name}.long-subalgebra",
                         f"{name}: long roots form a closed subsystem with complement v+1",
                         "pass" if ok else "fail",
                         {"closed": closed, "type": typ, "complement": n_short, "v+1": v + 1}))
    if fam == "F4":
        classes = short_classes(rs)
        sizes = sorted(bin(c).count("1") for c in classes)
        report.add(Check(f"exceptional.{name}.classes", f"{name}: short roots split into 3 long-closed classes of 8",
                         "pass" if sizes == [8, 8, 8] else "fail", {"sizes": sizes}))
        details = []
        ok = True
        for c in classes:
            psi = lm | c
            closed = is_closed(rs, RootSubset(rs, psi))
            typ = subsystem_type(rs, _bits(psi))
            comp = bin(full & ~psi).count("1")
            details.append({"closed": closed, "type": typ, "complement": comp})
            ok &= closed and canonical_types(typ) == ["B4"] and comp == 16 == v + 1
        report.add(Check(f"exceptional.{name}.B4", f"{name}: long roots with one class form B4 of codimension v+1",
                         "pass" if ok else "fail", {"classes": details, "v+1": v + 1}))
        # a single short root together with the long roots already produces its full class
        gen = all(long_orbit(rs, i) & set(_bits(sm)) == set(_bits(c)) & set(_bits(sm))
                  for c in classes for i in _bits(c))
        report.add(Check(f"exceptional.{name}.class-generation",
                         f"{name}: each short root generates its class under long roots",
                         "pass" if gen else "fail", {}))
    return report
