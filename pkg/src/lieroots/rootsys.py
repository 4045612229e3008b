"""Irreducible (possibly non-reduced) root systems in exact ε-coordinates.

Vectors are stored as an integer numerator tuple over a common positive
denominator, so roots (which live in ½ℤ) hash and compare cheaply while
coroots such as α/3 in G2 remain exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .report import Check, VerificationReport, load_fixture

FAMILIES = ("A", "B", "C", "D", "BC", "E6", "E7", "E8", "F4", "G2")
EXCEPTIONAL_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}


class RootSystemError(ValueError):
    pass


# --------------------------------------------------------------------------
# ExactVec


@dataclass(frozen=True, order=True)
class ExactVec:
    """Rational vector ``num / den`` with ``den > 0`` and gcd-normalized."""

    num: Tuple[int, ...]
    den: int = 1

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        g = self.den
        for x in self.num:
            g = gcd(g, x)
            if g == 1:
                return
        if g > 1:
            object.__setattr__(self, "num", tuple(x // g for x in self.num))
            object.__setattr__(self, "den", self.den // g)

    @classmethod
    def of(cls, coords: Iterable) -> "ExactVec":
        fr = [Fraction(c) for c in coords]
        den = 1
        for f in fr:
            den = den * f.denominator // gcd(den, f.denominator)
        return cls(tuple(int(f * den) for f in fr), den)

    @classmethod
    def halves(cls, doubled: Iterable[int]) -> "ExactVec":
        return cls(tuple(doubled), 2)

    @classmethod
    def unit(cls, dim: int, i: int, scale: int = 1) -> "ExactVec":
        """``scale * ε_i`` (0-based ``i``)."""
        return cls(tuple(scale if j == i else 0 for j in range(dim)))

    @classmethod
    def zero(cls, dim: int) -> "ExactVec":
        return cls((0,) * dim)

    @property
    def dim(self) -> int:
        return len(self.num)

    @property
    def coords(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def _check(self, other: "ExactVec"):
        if len(other.num) != len(self.num):
            raise RootSystemError(f"dimension mismatch: {len(self.num)} vs {len(other.num)}")

    def __add__(self, other: "ExactVec") -> "ExactVec":
        self._check(other)
        if self.den == other.den:
            return ExactVec(tuple(a + b for a, b in zip(self.num, other.num)), self.den)
        d = self.den * other.den
        return ExactVec(tuple(a * other.den + b * self.den for a, b in zip(self.num, other.num)), d)

    def __neg__(self) -> "ExactVec":
        return ExactVec(tuple(-a for a in self.num), self.den)

    def __sub__(self, other: "ExactVec") -> "ExactVec":
        return self + (-other)

    def scale(self, c) -> "ExactVec":
        c = Fraction(c)
        return ExactVec(tuple(a * c.numerator for a in self.num), self.den * c.denominator)

    def __mul__(self, c) -> "ExactVec":
        return self.scale(c)

    __rmul__ = __mul__

    def dot(self, other: "ExactVec") -> Fraction:
        self._check(other)
        return Fraction(sum(a * b for a, b in zip(self.num, other.num)), self.den * other.den)

    def __repr__(self) -> str:
        return "ExactVec(" + ", ".join(str(c) for c in self.coords) + ")"

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def pairing(u: ExactVec, v: ExactVec) -> Fraction:
    """Euclidean inner product in ε-coordinates."""
    return u.dot(v)


def coroot(alpha: ExactVec) -> ExactVec:
    """α^∨ = 2α/(α,α)."""
    if alpha.is_zero():
        raise RootSystemError("coroot of the zero vector is undefined")
    return alpha.scale(Fraction(2) / alpha.dot(alpha))


def cartan_integer(beta: ExactVec, alpha: ExactVec) -> int:
    """⟨β, α^∨⟩, which must be an integer for roots of one system."""
    val = 2 * beta.dot(alpha) / alpha.dot(alpha)
    if val.denominator != 1:
        raise RootSystemError(f"non-integral Cartan pairing {val}")
    return int(val)


def cartan_matrix(base: Sequence[ExactVec]) -> List[List[int]]:
    """Entry (i, j) is ⟨α_j, α_i^∨⟩."""
    if len(set(base)) != len(base) or any(a.is_zero() for a in base):
        raise RootSystemError("base vectors must be distinct and nonzero")
    return [[cartan_integer(aj, ai) for aj in base] for ai in base]


# --------------------------------------------------------------------------
# RootSystem


@dataclass(frozen=True, eq=False)
class RootSystem:
    family: str
    rank: int
    ambient_dim: int
    roots: Tuple[ExactVec, ...]  # sorted lexicographically on coordinates
    simple: Tuple[ExactVec, ...]
    constraints: Tuple[ExactVec, ...] = field(default=())

    @property
    def name(self) -> str:
        return self.family if self.family in EXCEPTIONAL_RANK else f"{self.family}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.name}, {len(self.roots)} roots)"

    @cached_property
    def _index(self) -> Dict[ExactVec, int]:
        return {r: i for i, r in enumerate(self.roots)}

    def index(self, v: ExactVec) -> Optional[int]:
        if v.dim != self.ambient_dim:
            raise RootSystemError(f"expected dimension {self.ambient_dim}, got {v.dim}")
        return self._index.get(v)

    def is_root(self, v: ExactVec) -> bool:
        return self.index(v) is not None

    def __len__(self) -> int:
        return len(self.roots)

    @cached_property
    def neg(self) -> Tuple[int, ...]:
        return tuple(self._index[-r] for r in self.roots)

    @cached_property
    def double(self) -> Tuple[int, ...]:
        """Index of 2β, or -1."""
        return tuple(self._index.get(r.scale(2), -1) for r in self.roots)

    @property
    def is_reduced(self) -> bool:
        return all(d < 0 for d in self.double)

    @cached_property
    def sum_table(self) -> Tuple[Tuple[int, ...], ...]:
        """``sum_table[i][j]`` is the index of roots[i]+roots[j], or -1."""
        idx = self._index
        out = []
        for a in self.roots:
            out.append(tuple(idx.get(a + b, -1) for b in self.roots))
        return tuple(out)

    def _gram_inverse(self, base: Sequence[ExactVec]):
        gram = [[a.dot(b) for b in base] for a in base]
        return linalg.inverse(gram)

    @cached_property
    def _default_ginv(self):
        return self._gram_inverse(self.simple)

    def coefficients(self, v: ExactVec, base: Optional[Sequence[ExactVec]] = None) -> Tuple[Fraction, ...]:
        """Coordinates of ``v`` in ``base`` (default: the default simple system).

        Only meaningful for vectors in the span of ``base``; :func:`in_span`
        can be used to check that.
        """
        if base is None:
            ginv = self._default_ginv
            base = self.simple
        else:
            ginv = self._gram_inverse(base)
        rhs = [v.dot(b) for b in base]
        return tuple(linalg.matvec(ginv, rhs))

    @cached_property
    def simple_coeffs(self) -> Tuple[Tuple[int, ...], ...]:
        """Integer simple coordinates of every root in the default base."""
        out = []
        for r in self.roots:
            c = self.coefficients(r)
            if any(x.denominator != 1 for x in c):
                raise RootSystemError(f"root {r} is not an integral combination of simple roots")
            out.append(tuple(int(x) for x in c))
        return tuple(out)

    def from_coefficients(self, coeffs: Sequence, base: Optional[Sequence[ExactVec]] = None) -> ExactVec:
        base = self.simple if base is None else base
        if len(coeffs) != len(base):
            raise RootSystemError("coefficient vector has wrong length")
        v = ExactVec.zero(self.ambient_dim)
        for c, b in zip(coeffs, base):
            if c:
                v = v + b.scale(c)
        return v

    def positive_indices(self) -> List[int]:
        return [i for i, c in enumerate(self.simple_coeffs) if sum(c) > 0]

    def in_cartan(self, x: ExactVec) -> bool:
        return all(x.dot(c) == 0 for c in self.constraints)


def positive_roots(rs: RootSystem, base: Optional[Sequence[ExactVec]] = None) -> List[ExactVec]:
    """Roots with nonnegative coordinates in ``base``."""
    if base is None or tuple(base) == rs.simple:
        return [rs.roots[i] for i in rs.positive_indices()]
    from .weyl import is_simple_system

    if not is_simple_system(rs, base):
        raise RootSystemError("base is not a simple system of the root system")
    out = []
    for r in rs.roots:
        if all(c >= 0 for c in rs.coefficients(r, base)):
            out.append(r)
    return out


def is_root(rs: RootSystem, v: ExactVec) -> bool:
    return rs.is_root(v)


# --------------------------------------------------------------------------
# constructions


def _e(dim, *pairs) -> ExactVec:
    """Sum of ``c * ε_i`` for (i, c) pairs, 1-based ``i``."""
    v = [0] * dim
    for i, c in pairs:
        v[i - 1] += c
    return ExactVec(tuple(v))


def _classical_roots(n: int, short: bool, long: bool, pm: bool = True) -> List[ExactVec]:
    roots = []
    for i, j in combinations(range(1, n + 1), 2):
        for si, sj in product((1, -1), repeat=2):
            if pm or si != sj:
                roots.append(_e(n, (i, si), (j, sj)))
    for i in range(1, n + 1):
        for s in (1, -1):
            if short:
                roots.append(_e(n, (i, s)))
            if long:
                roots.append(_e(n, (i, 2 * s)))
    return roots


def _e8_roots() -> List[ExactVec]:
    roots = _classical_roots(8, False, False)
    for signs in product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(ExactVec.halves(signs))
    return roots


def _bourbaki_e8() -> List[ExactVec]:
    a1 = ExactVec.halves((1, -1, -1, -1, -1, -1, -1, 1))
    a2 = _e(8, (1, 1), (2, 1))
    rest = [_e(8, (i, -1), (i + 1, 1)) for i in range(1, 7)]
    return [a1, a2] + rest  # Bourbaki α1..α8


def _admissible(family: str, rank: int) -> None:
    if family in EXCEPTIONAL_RANK:
        if rank != EXCEPTIONAL_RANK[family]:
            raise RootSystemError(f"{family} requires rank {EXCEPTIONAL_RANK[family]}, got {rank}")
        return
    minimum = {"A": 1, "B": 2, "C": 2, "BC": 1, "D": 3}[family]
    if rank < minimum:
        raise RootSystemError(f"family {family} requires rank >= {minimum}, got {rank}")


def normalize_family(family: str, rank: Optional[int] = None) -> str:
    f = family.strip().upper()
    if f in ("E", "F", "G") and rank is not None:
        f = f"{f}{rank}"
    if f not in FAMILIES:
        raise RootSystemError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    return f


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Construct a root system with its default (left-to-right) simple system."""
    family = normalize_family(family, rank)
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise RootSystemError("rank must be an integer")
    _admissible(family, rank)
    n = rank
    if family == "A":
        dim = n + 1
        roots = [_e(dim, (i, 1), (j, -1)) for i in range(1, dim + 1) for j in range(1, dim + 1) if i != j]
        simple = [_e(dim, (i, 1), (i + 1, -1)) for i in range(1, n + 1)]
    elif family in ("B", "C", "BC", "D"):
        dim = n
        roots = _classical_roots(
            n, short=family in ("B", "BC"), long=family in ("C", "BC"))
        simple = [_e(n, (i, 1), (i + 1, -1)) for i in range(1, n)]
        if family == "D":
            simple.append(_e(n, (n - 1, 1), (n, 1)))
        elif family == "C":
            simple.append(_e(n, (n, 2)))
        else:
            simple.append(_e(n, (n, 1)))
    elif family == "G2":
        dim = 3
        roots = []
        for i, j in product(range(1, 4), repeat=2):
            if i != j:
                roots.append(_e(3, (i, 1), (j, -1)))
        for i in range(1, 4):
            others = [k for k in range(1, 4) if k != i]
            for s in (1, -1):
                roots.append(_e(3, (i, 2 * s), (others[0], -s), (others[1], -s)))
        simple = [_e(3, (1, -2), (2, 1), (3, 1)), _e(3, (1, 1), (2, -1))]
    elif family == "F4":
        dim = 4
        roots = _classical_roots(4, short=True, long=False)
        for signs in product((1, -1), repeat=4):
            roots.append(ExactVec.halves(signs))
        simple = [_e(4, (2, 1), (3, -1)), _e(4, (3, 1), (4, -1)), _e(4, (4, 1)),
                  ExactVec.halves((1, -1, -1, -1))]
    else:
        dim = 8
        b = _bourbaki_e8()
        order = {
            "E8": [8, 7, 6, 5, 4, 3, 1, 2],
            "E7": [7, 6, 5, 4, 3, 1, 2],
            "E6": [1, 3, 4, 5, 6, 2],
        }[family]
        simple = [b[k - 1] for k in order]
        roots = _e8_roots()
    constraints = tuple(ExactVec.of(row) for row in linalg.nullspace([s.coords for s in simple], dim))
    if constraints:
        roots = [r for r in roots if all(r.dot(c) == 0 for c in constraints)]
    return RootSystem(family, rank, dim, tuple(sorted(set(roots))), tuple(simple), constraints)


def expected_root_count(family: str, rank: int) -> int:
    family = normalize_family(family, rank)
    n = rank
    return {
        "A": n * (n + 1), "B": 2 * n * n, "C": 2 * n * n, "BC": 2 * n * n + 2 * n,
        "D": 2 * n * (n - 1), "E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12,
    }[family]


def supported_systems(max_rank: int = 8, min_rank: int = 1) -> List[Tuple[str, int]]:
    """Every admissible (family, rank) with rank in [min_rank, max_rank]."""
    out = []
    for f in FAMILIES:
        if f in EXCEPTIONAL_RANK:
            r = EXCEPTIONAL_RANK[f]
            if min_rank <= r <= max_rank:
                out.append((f, r))
            continue
        lo = {"A": 1, "B": 2, "C": 2, "BC": 1, "D": 3}[f]
        for r in range(max(lo, min_rank), max_rank + 1):
            out.append((f, r))
    return out


# --------------------------------------------------------------------------
# closed-form B/D positive-root families


def _eval(expr, env: Dict[str, int]) -> int:
    """Evaluate tiny index expressions like ``"k+1"`` or ``"l-2"``."""
    if isinstance(expr, int):
        return expr
    s = expr.replace(" ", "").replace("-", "+-")
    total = 0
    for term in filter(None, s.split("+")):
        neg = term.startswith("-")
        t = term.lstrip("-")
        val = env[t] if t in env else int(t)
        total += -val if neg else val
    return total


def expand_family(fam: dict, rank: int) -> Dict[Tuple[int, ...], ExactVec]:
    """Instantiate one closed-form family: simple coefficients -> ε-vector."""
    params = fam["params"]
    out = {}
    for vals in product(range(1, rank + 1), repeat=len(params)):
        env = dict(zip(params, vals), l=rank)
        if not all(_eval(a, env) <= _eval(b, env) if op == "<=" else _eval(a, env) < _eval(b, env)
                   for a, op, b in fam["range"]):
            continue
        coeff = [0] * rank
        for lo, hi, c in fam["coeff"]:
            for m in range(_eval(lo, env), _eval(hi, env) + 1):
                coeff[m - 1] += c
        eps = [0] * rank
        for idx, c in fam["eps"]:
            eps[_eval(idx, env) - 1] += c
        out[tuple(coeff)] = ExactVec(tuple(eps))
    return out


def verify_bd_tables(max_rank: int = 8, fixture: Optional[dict] = None) -> VerificationReport:
    if max_rank < 4:
        raise RootSystemError("max_rank must be at least 4")
    fixture = fixture if fixture is not None else load_fixture("table2_bd.json")
    report = VerificationReport("table2")
    for family in ("B", "D"):
        fams = fixture[family]
        for rank in range(4 if family == "D" else 2, max_rank + 1):
            rs = build_root_system(family, rank)
            pos = {rs.simple_coeffs[i]: rs.roots[i] for i in rs.positive_indices()}
            covered = {}
            for fam in fams:
                listed = expand_family(fam, rank)
                bad = {str(list(c)): str(v) for c, v in listed.items()
                       if pos.get(c) != v}
                report.add(Check(
                    f"table2.{family}{rank}.{fam['id']}",
                    f"{family}{rank}: {fam['text']}",
                    "fail" if bad else "pass",
                    {"mismatched": bad} if bad else {"count": len(listed)},
                ))
                covered.update(listed)
            missing = sorted(str(list(c)) for c in pos if c not in covered)
            report.add(Check(
                f"table2.{family}{rank}.complete",
                f"{family}{rank}: listed families exhaust the positive roots",
                "fail" if missing or len(covered) != len(pos) else "pass",
                {"missing": missing, "listed": len(covered), "positive": len(pos)},
            ))
    return report


def check_diagram_fixture(max_rank: int = 8, fixture: Optional[dict] = None) -> VerificationReport:
    """Default bases reproduce the fixture's left-to-right diagrams."""
    from .weyl import diagram_edges, reference_edges

    fixture = fixture if fixture is not None else load_fixture("diagrams.json")
    report = VerificationReport("diagrams")
    for family, rank in supported_systems(max_rank, min_rank=2):
        rs = build_root_system(family, rank)
        got = diagram_edges(cartan_matrix(rs.simple))
        try:
            want = reference_edges(family, rank, fixture)
        except KeyError:
            continue
        report.add(Check(
            f"diagram.{rs.name}", f"default base of {rs.name} matches the reference diagram",
            "pass" if got == want else "fail",
            {} if got == want else {"computed": sorted(got), "fixture": sorted(want)},
        ))
    return report
