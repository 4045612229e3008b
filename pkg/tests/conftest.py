"""Shared helpers: independent oracles used across the test modules."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import pytest

from lieroots import ExactVec

# per-criterion acceptance outcomes, printed in the terminal summary
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])


def textbook_roots(family: str, n: int):
    """Root sets written out from the standard ε-coordinate descriptions."""

    def e(dim, **kw):
        v = [Fraction(0)] * dim
        for i, c in kw.items():
            v[int(i[1:]) - 1] += Fraction(c)
        return tuple(v)

    out = set()
    if family == "A":
        for i, j in product(range(n + 1), repeat=2):
            if i != j:
                v = [0] * (n + 1)
                v[i], v[j] = 1, -1
                out.add(tuple(map(Fraction, v)))
        return out
    for i, j in combinations(range(n), 2):
        for si, sj in product((1, -1), repeat=2):
            v = [0] * n
            v[i], v[j] = si, sj
            if family in ("B", "C", "BC", "D"):
                out.add(tuple(map(Fraction, v)))
    for i in range(n):
        for s in (1, -1):
            if family in ("B", "BC"):
                v = [0] * n
                v[i] = s
                out.add(tuple(map(Fraction, v)))
            if family in ("C", "BC"):
                v = [0] * n
                v[i] = 2 * s
                out.add(tuple(map(Fraction, v)))
    return out


def brute_closure(vectors, roots):
    """Closure by repeated pairwise sums (β = γ allowed), on coordinate tuples."""
    have = set(vectors)
    rootset = set(roots)
    while True:
        new = {tuple(a + b for a, b in zip(x, y)) for x in have for y in have}
        new = {v for v in new if v in rootset} - have
        if not new:
            return have
        have |= new


@pytest.fixture
def vec():
    return lambda *xs: ExactVec.of(xs)
