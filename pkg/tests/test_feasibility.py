from fractions import Fraction
from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from lieroots.feasibility import Ineq, feasible, solve


def test_simple_systems():
    assert solve([Ineq.of([1]), Ineq.of([-1])], 1) is None  # x > 0 and x < 0
    assert solve([Ineq.of([1], strict=False), Ineq.of([-1], strict=False)], 1) == [0]
    y = solve([Ineq.of([1, 0]), Ineq.of([-1, 1]), Ineq.of([0, -1], 1)], 2)  # 0 < x < y < 1
    assert 0 < y[0] < y[1] < 1
    assert feasible([], 3)
    assert not feasible([Ineq.of([0, 0], -1, strict=False)], 2)


def grid_witness(ineqs, dim, radius=3, den=2):
    pts = [Fraction(k, den) for k in range(-radius * den, radius * den + 1)]
    for y in product(pts, repeat=dim):
        if all(q.holds(y) for q in ineqs):
            return list(y)
    return None


ineq = st.builds(
    lambda c, b, s: Ineq.of(c, b, s),
    st.lists(st.integers(-3, 3), min_size=2, max_size=2),
    st.integers(-2, 2),
    st.booleans(),
)


@settings(max_examples=150, deadline=None)
@given(st.lists(ineq, min_size=1, max_size=5))
def test_agrees_with_grid_search(ineqs):
    y = solve(ineqs, 2)
    if y is not None:
        assert all(q.holds(y) for q in ineqs)
    # a grid point certifies feasibility, so the solver must not miss it
    if grid_witness(ineqs, 2) is not None:
        assert y is not None
