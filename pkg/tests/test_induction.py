from fractions import Fraction

import pytest

from lieroots import ExactVec, build_root_system
from lieroots.induction import (
    CartanSubspace,
    centralizes,
    commutes,
    coroot_line,
    kernel_space,
    load_induction_rows,
    nonneg_combination,
    subspace_eq,
    subspace_sum,
    verify_firstind_identities,
    verify_induction_table,
    zero_space,
)
from lieroots.report import load_fixture
from lieroots.rootsys import RootSystemError
from lieroots.subalg import RootSubset
from lieroots.weyl import combo, delta_base


def span(*rows):
    return CartanSubspace.span(len(rows[0]), rows)


def test_a3_coroot_line_and_kernels():
    a3 = build_root_system("A", 3)
    d1, d2, d3 = a3.simple
    assert coroot_line(a3, d1) == span((1, -1, 0, 0))
    assert kernel_space(a3, [d2, d1 + d2 + d3]) == span((1, -1, -1, 1))
    assert kernel_space(a3, list(a3.simple)) == zero_space(a3)


def test_a3_identity_by_hand():
    a3 = build_root_system("A", 3)
    d1, d2, d3 = a3.simple
    lhs = subspace_sum(kernel_space(a3, [d2, d1 + d2 + d3]), kernel_space(a3, [d1 + d2, d2 + d3]))
    # both sides are {(a, −a, b, −b)}
    want = span((1, -1, 0, 0), (0, 0, 1, -1))
    assert subspace_eq(lhs, want)
    assert subspace_eq(subspace_sum(coroot_line(a3, d1), coroot_line(a3, d3)), want)


def test_subspace_laws():
    u = span((1, 0, 0), (0, 1, 1))
    v = span((0, 0, 1))
    z = CartanSubspace(3, ())
    assert u + z == u
    assert u + v == v + u
    assert u + u == u
    assert u.intersect(v) == z
    assert (u + v).dim == 3
    with pytest.raises(RootSystemError):
        _ = u + CartanSubspace(2, ())


def test_non_adjacent_diagonals_lie_in_kernels():
    for fam, r in (("A", 6), ("B", 5), ("C", 5), ("D", 6), ("E6", 6), ("F4", 4), ("G2", 2)):
        rs = build_root_system(fam, r)
        for i, a in enumerate(rs.simple):
            for j, b in enumerate(rs.simple):
                if i != j and a.dot(b) == 0:
                    assert coroot_line(rs, a) <= kernel_space(rs, [b])


def test_centralizes_examples():
    a5 = build_root_system("A", 5)
    d = delta_base(a5)
    I = RootSubset.of(a5, [d[3], d[3] + d[4], -d[4]])
    assert centralizes(a5, d[0], I)
    assert centralizes(a5, -d[2], I)
    assert not centralizes(a5, d[2], I)
    assert centralizes(a5, d[2], RootSubset(a5, 0))


def test_commutes(vec):
    bc2 = build_root_system("BC", 2)
    assert not commutes(bc2, vec(0, 1), vec(1, -1))  # e1 is a root
    assert not commutes(bc2, vec(0, 1), vec(0, -2))  # −e2 is a root
    assert not commutes(bc2, vec(1, 0), vec(-1, 0))  # zero sum
    assert commutes(bc2, vec(1, 0), vec(0, 2))
    assert commutes(bc2, vec(1, 0), vec(1, 1))  # 2e1+e2, 3e1+e2, 2e1+2e2, ... are not roots
    assert commutes(bc2, vec(2, 0), vec(1, 1))


def test_nonneg_combination_examples():
    a5 = build_root_system("A", 5)
    d = delta_base(a5)
    gens = [d[3], d[3] + d[4], -d[4]] + [s * d[k] for k in range(4) for s in (1, -1)]
    c = nonneg_combination(a5, d[4], gens)
    assert c is not None
    total = ExactVec.zero(a5.ambient_dim)
    for x, g in zip(c, gens):
        total = total + g * x
    assert total == d[4] and min(c) >= 0
    assert nonneg_combination(a5, -d[4], [-d[4]]) == [1]
    a2 = build_root_system("A", 2)
    assert nonneg_combination(a2, a2.simple[0], [a2.simple[1]]) is None
    with pytest.raises(ValueError):
        nonneg_combination(a2, a2.simple[0], [a2.simple[1]], coeff_bound=0)


def test_nonneg_combination_matches_brute_force():
    from itertools import product

    d4 = build_root_system("D", 4)
    d = d4.simple
    gens = [d[1], -(d[0] + d[1] + d[2] + d[3]), d[3], -d[2]]
    for target in [-d[0], d[0], -d[3], d[1] + d[3]]:
        brute = any(sum((g * c for g, c in zip(gens, cs)), ExactVec.zero(4)) == target
                    for cs in product(range(7), repeat=len(gens)))
        assert (nonneg_combination(d4, target, gens) is not None) == brute


def test_firstind_identities():
    rep = verify_firstind_identities()
    assert rep.ok
    ids = [c for c in rep.checks if c.id.endswith(".identity")]
    assert len(ids) == 8 and all(c.status == "pass" for c in ids)
    assert rep.by_id("firstind.D4.combination1").status == "expected-fail"
    assert rep.by_id("firstind.D4.combination2").status == "pass"


def test_firstind_corruption_detected():
    fx = load_fixture("firstind.json")
    fx["cases"][0]["kernel_groups"][0][1] = [1, 1, 0]
    assert not verify_firstind_identities(fx).ok


def test_induction_rows_instantiate_to_roots():
    for row in load_induction_rows():
        for inst in row.instances:
            lo, hi = inst["ranks"]
            for r in range(max(lo, 4), hi + 1):
                rs = build_root_system(inst["family"], r)
                I, dstar, top = row.instantiate(rs, inst["side"])
                assert all(rs.is_root(v) for v in I + [dstar, top])


def test_induction_table():
    rep = verify_induction_table(8)
    assert rep.ok, rep.text_summary()
    assert rep.by_id("induction.F4-second.F4.c2").status == "pass"
    assert rep.by_id("induction.BC-left.BC8.c2").status == "pass"
    with pytest.raises(RootSystemError):
        verify_induction_table(4)


def test_induction_corruption_detected():
    fx = load_fixture("induction_table.json")
    fx["rows"][0]["I"][0] = [["j", 1], ["j-1", 1]]  # δ_{j−1}+δ_j spoils closedness/centralizing
    assert not verify_induction_table(5, fx).ok
