"""Weights of the defining representations, Weyl chambers of weight
functionals, conformal and separating Cartan elements, and elementary-matrix
weight-space facts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .feasibility import Ineq, solve
from .induction import cartan_space, kernel_space
from .parabolic import n_of
from .report import Check, VerificationReport
from .rootsys import ExactVec, RootSystem, RootSystemError, build_root_system, normalize_family

WEIGHT_FAMILIES = ("A", "B", "C", "D")


@dataclass(frozen=True)
class WeightSystem:
    family: str
    rank: int
    weights: Tuple[ExactVec, ...]

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def root_system(self) -> RootSystem:
        return build_root_system(self.family, self.rank)

    def dual(self) -> "WeightSystem":
        return WeightSystem(self.family, self.rank, tuple(-w for w in self.weights))

    def value(self, i: int, x: ExactVec) -> Fraction:
        """⟨λ_i, X⟩ for a 1-based weight index."""
        return self.weights[i - 1].dot(x)


@dataclass(frozen=True)
class ChamberSign:
    signs: Tuple[int, ...]  # ±1 per weight
    witness: Tuple[Fraction, ...]  # a point of 𝔞 realizing the signs

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


def defining_weights(family: str, rank: int) -> WeightSystem:
    family = normalize_family(family, rank)
    if family not in WEIGHT_FAMILIES:
        raise RootSystemError(f"no defining representation tabulated for {family}")
    rs = build_root_system(family, rank)
    d = rs.ambient_dim
    if family == "A":
        ws = [ExactVec.unit(d, i) for i in range(d)]
    else:
        ws = [ExactVec.unit(d, i) for i in range(d)] + [ExactVec.unit(d, i, -1) for i in range(d)]
        if family == "B":
            ws.append(ExactVec.zero(d))
    out = WeightSystem(family, rank, tuple(ws))
    if out.n != n_of(family, rank):
        raise AssertionError(f"{family}{rank}: {out.n} weights but n = {n_of(family, rank)}")
    return out


def vanishes_on_cartan(rs: RootSystem, v: ExactVec) -> bool:
    return all(v.dot(a) == 0 for a in rs.simple)


def _basis(space) -> List[ExactVec]:
    return [ExactVec.of(row) for row in space.basis]


def _form(weight: ExactVec, basis: Sequence[ExactVec]) -> List[Fraction]:
    """Coefficients of the linear form y ↦ ⟨weight, Σ y_i b_i⟩."""
    return [weight.dot(b) for b in basis]


def _point(y: Sequence[Fraction], basis: Sequence[ExactVec]) -> ExactVec:
    out = ExactVec.zero(basis[0].dim)
    for c, b in zip(y, basis):
        out = out + b * c
    return out


# --------------------------------------------------------------------------
# chambers


def chambers(ws: WeightSystem) -> List[ChamberSign]:
    """All realizable strict sign patterns of the weights on 𝔞."""
    rs = ws.root_system
    if any(vanishes_on_cartan(rs, w) for w in ws.weights):
        raise RootSystemError(f"{ws.family}{ws.rank} has a zero weight; chambers are undefined")
    basis = _basis(cartan_space(rs))
    forms = [_form(w, basis) for w in ws.weights]
    out: List[ChamberSign] = []

    def dfs(prefix: List[int], ineqs: List[Ineq]):
        if len(prefix) == len(forms):
            y = solve(ineqs, len(basis))
            out.append(ChamberSign(tuple(prefix), tuple(_point(y, basis).coords)))
            return
        f = forms[len(prefix)]
        for s in (1, -1):
            nxt = ineqs + [Ineq.of([s * c for c in f])]
            if solve(nxt, len(basis)) is not None:
                dfs(prefix + [s], nxt)

    dfs([], [])
    return sorted(out, key=lambda c: tuple(-s for s in c.signs))


# --------------------------------------------------------------------------
# conformal elements


def conformal_element(ws: WeightSystem, sigma: Sequence[int]) -> ExactVec:
    """a₀ with ⟨λ_i, a₀⟩ = −1/k on σ (k = |σ|) and 1/(n−k) off σ."""
    if ws.family != "A":
        raise RootSystemError("conformal elements are defined for the A family")
    sigma = set(sigma)
    n, k = ws.n, len(sigma)
    if not sigma or k == n or not sigma <= set(range(1, n + 1)):
        raise RootSystemError("σ must be a proper nonempty subset of 1..n")
    a0 = ExactVec.of([Fraction(-1, k) if i in sigma else Fraction(1, n - k) for i in range(1, n + 1)])
    rs = ws.root_system
    if not rs.in_cartan(a0):
        raise AssertionError("conformal element is not trace-zero")
    return a0


# --------------------------------------------------------------------------
# separating pairs


def admissible_partners(ws: WeightSystem) -> List[int]:
    """Indices k ≠ 1 with λ_k ≠ ±λ₁ as functionals on 𝔞."""
    rs = ws.root_system
    l1 = ws.weights[0]
    return [k for k in range(2, ws.n + 1)
            if not vanishes_on_cartan(rs, ws.weights[k - 1] - l1)
            and not vanishes_on_cartan(rs, ws.weights[k - 1] + l1)]


@dataclass(frozen=True)
class SeparatingResult:
    k: int
    in_kernel: bool
    a1: Optional[ExactVec]
    a2: Optional[ExactVec]
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.a1 is not None


def separating_conditions(ws: WeightSystem, k: int, a1: ExactVec, a2: ExactVec) -> Dict[str, bool]:
    """The three constraint groups, re-evaluated exactly."""
    v = ws.value
    others = [l for l in range(1, ws.n + 1) if l not in (1, k)]
    return {
        "a1": v(1, a1) < v(k, a1) < 0,
        "a2": v(k, a2) < v(1, a2) < 0,
        "others": all(v(l, a1) >= 0 or v(l, a2) >= 0 for l in others),
    }


def separating_pair(ws: WeightSystem, k: int, in_kernel: bool = True) -> SeparatingResult:
    """Search exactly for a₁, a₂ with λ₁(a₁)<λ_k(a₁)<0, λ_k(a₂)<λ₁(a₂)<0 and,
    for every other l, λ_l(a₁) ≥ 0 or λ_l(a₂) ≥ 0.

    With ``in_kernel`` both elements are confined to ker(λ_k − λ₁) ∩ 𝔞;
    otherwise they range over all of 𝔞.
    """
    if ws.family not in ("A", "C"):
        raise RootSystemError("separating pairs are considered for the A and C families")
    if k not in admissible_partners(ws):
        raise RootSystemError(f"λ_{k} must differ from ±λ_1")
    rs = ws.root_system
    l1, lk = ws.weights[0], ws.weights[k - 1]
    space = kernel_space(rs, [lk - l1]) if in_kernel else cartan_space(rs)
    basis = _basis(space)
    dim = len(basis)
    f = lambda w: _form(w, basis)  # noqa: E731
    base1 = [Ineq.of([a - b for a, b in zip(f(lk), f(l1))]), Ineq.of([-c for c in f(lk)])]
    base2 = [Ineq.of([a - b for a, b in zip(f(l1), f(lk))]), Ineq.of([-c for c in f(l1)])]
    if dim == 0 or solve(base1, dim) is None:
        return SeparatingResult(k, in_kernel, None, None, "no a1 satisfies λ1(a1) < λk(a1) < 0 in the search space")
    if solve(base2, dim) is None:
        return SeparatingResult(k, in_kernel, None, None, "no a2 satisfies λk(a2) < λ1(a2) < 0 in the search space")
    others = [l for l in range(1, ws.n + 1) if l not in (1, k)]

    def dfs(i, s1, s2):
        if i == len(others):
            return s1, s2
        g = Ineq.of(f(ws.weights[others[i] - 1]), strict=False)
        for side in (0, 1):
            t1, t2 = (s1 + [g], s2) if side == 0 else (s1, s2 + [g])
            if solve(t1 if side == 0 else t2, dim) is not None:
                got = dfs(i + 1, t1, t2)
                if got:
                    return got
        return None

    got = dfs(0, base1, base2)
    if not got:
        return SeparatingResult(k, in_kernel, None, None, "no assignment of the remaining weights is feasible")
    a1 = _point(solve(got[0], dim), basis)
    a2 = _point(solve(got[1], dim), basis)
    if not all(separating_conditions(ws, k, a1, a2).values()):
        raise AssertionError("separating witness failed exact re-evaluation")
    return SeparatingResult(k, in_kernel, a1, a2)


# --------------------------------------------------------------------------
# weight differences and elementary matrices


def weight_diff_root_check(ws: WeightSystem, rs: Optional[RootSystem] = None) -> VerificationReport:
    rs = rs or ws.root_system
    if (rs.family, rs.rank) != (ws.family, ws.rank):
        raise RootSystemError("weight system and root system disagree")
    report = VerificationReport("weight-differences")
    name = rs.name
    for i in range(1, ws.n + 1):
        for k in range(1, ws.n + 1):
            li, lk = ws.weights[i - 1], ws.weights[k - 1]
            if i == k or vanishes_on_cartan(rs, lk - li):
                continue
            beta = lk - li
            opposite = vanishes_on_cartan(rs, lk + li)
            ok = rs.is_root(beta)
            if ok:
                status = "pass"
            elif opposite and ws.family in ("B", "D"):
                status = "expected-fail"  # 2ε_i is not a root of the orthogonal families
            else:
                status = "fail"
            report.add(Check(f"weights.diff.{name}.{i}.{k}", f"{name}: λ_{k} − λ_{i} is a root", status,
                             {"difference": str(beta), "opposite": opposite}))
    return report


def elementary_matrix(n: int, i: int, j: int, t) -> List[List[Fraction]]:
    t = Fraction(t)
    return [[Fraction(int(r == c)) + (t if (r, c) == (i - 1, j - 1) else 0) for c in range(n)] for r in range(n)]


def elementary_rep_check(n: int, i: int, j: int, t=1) -> VerificationReport:
    """u = 1 + t·E_ij realizing the root ε_i − ε_j on the standard basis."""
    if not 2 <= n <= 8 or i == j or not (1 <= i <= n and 1 <= j <= n):
        raise RootSystemError("need 2 ≤ n ≤ 8 and distinct indices in 1..n")
    if Fraction(t) == 0:
        raise RootSystemError("t = 0 gives the identity")
    m = elementary_matrix(n, i, j, t)
    e = lambda a: [Fraction(int(r == a - 1)) for r in range(n)]  # noqa: E731
    report = VerificationReport("elementary")
    tag = f"n{n}.{i}{j}"
    fixed = [a for a in range(1, n + 1) if a != j and linalg.matvec(m, e(a)) != e(a)]
    report.add(Check(f"weights.elem.{tag}.fixed", f"u fixes every V^λ_a with a ≠ {j}",
                     "fail" if fixed else "pass", {"moved": fixed}))
    img = linalg.matvec(m, e(j))
    moved = linalg.rank([img, e(j)]) == 2
    report.add(Check(f"weights.elem.{tag}.moves", f"u(V^λ_{j}) ∩ V^λ_{j} = 0",
                     "pass" if moved else "fail", {"image": [str(x) for x in img]}))
    plane = [e(i), e(j)]
    keeps = all(linalg.rank(plane + [linalg.matvec(m, v)]) == 2 for v in plane)
    report.add(Check(f"weights.elem.{tag}.plane", f"u preserves V^λ_{i} ⊕ V^λ_{j}",
                     "pass" if keeps else "fail", {}))
    return report


# --------------------------------------------------------------------------
# suite


def _vec(v: Optional[ExactVec]):
    return [str(c) for c in v.coords] if v is not None else None


def verify_weights(max_rank: int = 8) -> VerificationReport:
    if max_rank < 2:
        raise RootSystemError("max_rank must be at least 2")
    report = VerificationReport("weights")
    lo = {"A": 1, "B": 2, "C": 2, "D": 3}
    for fam in WEIGHT_FAMILIES:
        for r in range(lo[fam], max_rank + 1):
            ws = defining_weights(fam, r)
            distinct = len(set(ws.weights)) == ws.n
            report.add(Check(f"weights.count.{fam}{r}", f"{fam}{r}: n distinct weights",
                             "pass" if distinct and ws.n == n_of(fam, r) else "fail", {"n": ws.n}))

    # chambers: 2^n − 2 for sl(n)
    for r in range(2, min(max_rank, 7) + 1):
        ws = defining_weights("A", r)
        ch = chambers(ws)
        signs = {c.signs for c in ch}
        expect = 2 ** ws.n - 2
        flip = all(tuple(-s for s in c) in signs for c in signs)
        ok = len(ch) == expect and flip and all(len(set(c)) == 2 for c in signs)
        report.add(Check(f"weights.chambers.A{r}", f"A{r}: exactly 2^n − 2 chambers",
                         "pass" if ok else "fail", {"count": len(ch), "expected": expect}))
    for r in range(2, min(max_rank, 4) + 1):
        ws = defining_weights("C", r)
        ch = chambers(ws)
        ok = len(ch) == 2 ** r and all(c.signs[i] == -c.signs[i + r] for c in ch for i in range(r))
        report.add(Check(f"weights.chambers.C{r}", f"C{r}: chambers are the 2^rank antisymmetric patterns",
                         "pass" if ok else "fail", {"count": len(ch)}))

    # conformal elements
    for r in range(2, min(max_rank, 7) + 1):
        ws = defining_weights("A", r)
        bad = []
        for k in range(1, ws.n):
            for sigma in combinations(range(1, ws.n + 1), k):
                a0 = conformal_element(ws, sigma)
                vals = [ws.value(i, a0) for i in range(1, ws.n + 1)]
                want = [Fraction(-1, k) if i in sigma else Fraction(1, ws.n - k) for i in range(1, ws.n + 1)]
                if vals != want or sum(vals) != 0:
                    bad.append(list(sigma))
        report.add(Check(f"weights.conformal.A{r}", f"A{r}: conformal elements are exact and trace-zero",
                         "fail" if bad else "pass", {"bad": bad}))

    # separating pairs: confined to ker β as stated, and over all of 𝔞
    for fam in ("A", "C"):
        for r in range(lo[fam], max_rank + 1):
            ws = defining_weights(fam, r)
            for k in admissible_partners(ws):
                lit = separating_pair(ws, k, in_kernel=True)
                report.add(Check(f"weights.separating.{fam}{r}.{k}.kernel",
                                 f"{fam}{r}, k={k}: a1, a2 in ker(λ_k − λ_1)",
                                 "pass" if lit.found else "expected-fail",
                                 {"reason": lit.reason, "a1": _vec(lit.a1), "a2": _vec(lit.a2)}))
                rel = separating_pair(ws, k, in_kernel=False)
                report.add(Check(f"weights.separating.{fam}{r}.{k}.cartan",
                                 f"{fam}{r}, k={k}: a1, a2 in the Cartan subspace",
                                 "pass" if rel.found else "fail",
                                 {"reason": rel.reason, "a1": _vec(rel.a1), "a2": _vec(rel.a2)}))

    # weight differences
    for fam in ("A", "C", "D"):
        for r in range({"A": 2, "C": 2, "D": 4}[fam], max_rank + 1):
            report.extend(weight_diff_root_check(defining_weights(fam, r)))

    # elementary matrices
    for n in range(2, min(max_rank, 8) + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    base = elementary_rep_check(n, i, j, 1)
                    other = elementary_rep_check(n, i, j, Fraction(-3, 2))
                    report.extend(base)
                    same = [c.status for c in base.checks] == [c.status for c in other.checks]
                    report.add(Check(f"weights.elem.n{n}.{i}{j}.t", "verdicts do not depend on t",
                                     "pass" if same else "fail", {}))
    report.extend(dual_symmetry_check())
    return report


def dual_symmetry_check() -> VerificationReport:
    """The dual representation (negated weights) gives the same verdicts."""
    report = VerificationReport("dual")
    for fam, r in (("A", 3), ("C", 3)):
        ws, dual = defining_weights(fam, r), defining_weights(fam, r).dual()
        same_ch = {c.signs for c in chambers(ws)} == {c.signs for c in chambers(dual)}
        rs = ws.root_system
        verdicts = lambda w: [rs.is_root(a - b) for a in w.weights for b in w.weights]  # noqa: E731
        roots_ok = verdicts(ws) == verdicts(dual)
        sep_ok = True
        for k in admissible_partners(ws):
            res = separating_pair(ws, k, in_kernel=False)
            sep_ok &= all(separating_conditions(dual, k, -res.a1, -res.a2).values())
        ok = same_ch and roots_ok and sep_ok
        report.add(Check(f"weights.dual.{fam}{r}", f"{fam}{r}: checks are symmetric under negating the weights",
                         "pass" if ok else "fail",
                         {"chambers": same_ch, "differences": roots_ok, "separating": sep_ok}))
    return report
