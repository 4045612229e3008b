"""Exact feasibility of systems of strict and non-strict rational inequalities.

Fourier–Motzkin elimination over ``Fraction``; a witness is recovered by
back-substitution.  Dimensions here are tiny (≤ 16), so this beats pulling
in an LP engine and keeps every answer exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class Ineq:
    """``coeffs · y + const`` is > 0 (strict) or ≥ 0."""

    coeffs: Tuple[Fraction, ...]
    const: Fraction
    strict: bool

    @classmethod
    def of(cls, coeffs: Sequence, const=0, strict: bool = True) -> "Ineq":
        return cls(tuple(Fraction(c) for c in coeffs), Fraction(const), strict)

    def holds(self, y: Sequence[Fraction]) -> bool:
        v = sum((c * x for c, x in zip(self.coeffs, y)), self.const)
        return v > 0 if self.strict else v >= 0

    def normalized(self) -> "Ineq":
        m = max((abs(c) for c in self.coeffs), default=0) or abs(self.const) or 1
        return Ineq(tuple(c / m for c in self.coeffs), self.const / m, self.strict)


def _bounds(ineqs: Sequence[Ineq], var: int, y: List[Fraction]):
    lo = hi = None
    lo_strict = hi_strict = False
    for q in ineqs:
        a = q.coeffs[var]
        rest = q.const + sum(q.coeffs[i] * y[i] for i in range(var + 1, len(y)))
        if a == 0:
            continue
        bound = -rest / a  # a·x + rest ⋈ 0
        if a > 0:
            if lo is None or bound > lo or (bound == lo and q.strict):
                lo, lo_strict = bound, q.strict
        else:
            if hi is None or bound < hi or (bound == hi and q.strict):
                hi, hi_strict = bound, q.strict
    return lo, lo_strict, hi, hi_strict


def _pick(lo, lo_strict, hi, hi_strict) -> Fraction:
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1
    if hi is None:
        return lo + 1
    if lo == hi:
        return lo
    return (lo + hi) / 2


def solve(ineqs: Sequence[Ineq], dim: int) -> Optional[List[Fraction]]:
    """A rational point satisfying every inequality, or None if none exists."""
    levels: List[List[Ineq]] = []
    cur = list({q.normalized() for q in ineqs})
    for var in range(dim):
        levels.append(cur)
        pos = [q for q in cur if q.coeffs[var] > 0]
        neg = [q for q in cur if q.coeffs[var] < 0]
        nxt = {q for q in cur if q.coeffs[var] == 0}
        for p in pos:
            for n in neg:
                a, b = p.coeffs[var], -n.coeffs[var]
                coeffs = tuple(b * x + a * z for x, z in zip(p.coeffs, n.coeffs))
                nxt.add(Ineq(coeffs, b * p.const + a * n.const, p.strict or n.strict).normalized())
        cur = list(nxt)
    for q in cur:  # only constants remain
        if not q.holds([Fraction(0)] * dim):
            return None
    y = [Fraction(0)] * dim
    for var in reversed(range(dim)):
        y[var] = _pick(*_bounds(levels[var], var, y))
    if not all(q.holds(y) for q in ineqs):  # exactness guard
        raise AssertionError("back-substitution produced an invalid witness")
    return y


def feasible(ineqs: Sequence[Ineq], dim: int) -> bool:
    return solve(ineqs, dim) is not None
