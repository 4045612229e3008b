from itertools import combinations

import pytest

from lieroots import build_root_system
from lieroots.parabolic import v_of
from lieroots.subalg import (
    BudgetExceeded,
    RootSubset,
    canonical_types,
    classification_report,
    classify_bounded,
    closed_complements,
    closure,
    coarse_compatible,
    exceptional_checks,
    is_closed,
    short_classes,
    subsystem_type,
    sum_is_root,
)

from conftest import brute_closure


def sum_triples(rs):
    """(a, b, c) with roots a + b = c, found from coordinates only (a ≤ b)."""
    pos = {r: i for i, r in enumerate(rs.roots)}
    out = []
    for a in range(len(rs.roots)):
        for b in range(a, len(rs.roots)):
            c = pos.get(rs.roots[a] + rs.roots[b])
            if c is not None:
                out.append((a, b, c))
    return out


def brute_closed_complements(rs, s):
    n = len(rs.roots)
    triples = sum_triples(rs)
    found = []
    for k in range(s + 1):
        for comp in combinations(range(n), k):
            S = sum(1 << i for i in comp)
            if all(not (S >> c & 1) or (S >> a & 1) or (S >> b & 1) for a, b, c in triples):
                found.append(S)
    return sorted(found)


@pytest.mark.parametrize("family,rank,s", [("A", 2, 6), ("B", 2, 8), ("BC", 2, 12), ("G2", 2, 6), ("A", 3, 5),
                                           ("B", 3, 6)])
def test_closed_complements_match_brute_force(family, rank, s):
    rs = build_root_system(family, rank)
    assert sorted(closed_complements(rs, s)) == brute_closed_complements(rs, s)


def test_closed_complements_order_is_size_then_lex():
    rs = build_root_system("A", 3)
    out = closed_complements(rs, 4)
    sizes = [bin(m).count("1") for m in out]
    assert sizes == sorted(sizes)


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("G2", 2), ("BC", 2)])
def test_closure_matches_brute_force(family, rank):
    rs = build_root_system(family, rank)
    coords = [r for r in rs.roots]
    for i in range(0, len(coords), 3):
        for j in range(i + 1, len(coords), 5):
            sub = RootSubset.of(rs, [coords[i], coords[j]])
            want = brute_closure([coords[i].coords, coords[j].coords], [c.coords for c in coords])
            assert {v.coords for v in closure(rs, sub).vectors()} == want


def test_closure_examples(vec):
    a2 = build_root_system("A", 2)
    assert len(closure(a2, RootSubset.of(a2, a2.simple))) == 3
    assert is_closed(a2, RootSubset(a2, 0))
    assert is_closed(a2, RootSubset.of(a2, a2.roots))
    bc1 = build_root_system("BC", 1)
    assert len(closure(bc1, RootSubset.of(bc1, [vec(1)]))) == 2  # e and 2e


def test_sum_is_root(vec):
    a2 = build_root_system("A", 2)
    a1, a2s = a2.simple
    assert sum_is_root(a2, a1, a2s) == a1 + a2s
    assert sum_is_root(a2, a1, -a1) is None
    b2 = build_root_system("B", 2)
    assert sum_is_root(b2, vec(0, 1), vec(1, -1)) == vec(1, 0)


def test_classify_examples():
    a3 = build_root_system("A", 3)
    outs = classify_bounded(a3, 4)
    assert all(o.verdict in ("full", "inside-maximal-parabolic") for o in outs)
    g2 = build_root_system("G2", 2)
    exc = [o for o in classify_bounded(g2, 6) if o.verdict == "exceptional"]
    assert len(exc) == 1 and len(exc[0].complement) == 6 and exc[0].witness["type"] == ["A2"]
    b3 = build_root_system("B", 3)
    exc = [o for o in classify_bounded(b3, 6) if o.verdict == "exceptional"]
    assert len(exc) == 1 and canonical_types(exc[0].witness["type"]) == ["A3"]
    assert len(exc[0].complement) == v_of("B", 3) + 1


def test_budget_guard():
    with pytest.raises(BudgetExceeded) as err:
        classify_bounded(build_root_system("B", 4), 8, budget=100)
    assert err.value.estimate > 100
    rep = classification_report([("B", 4)], budget=100)
    assert rep.checks[0].status == "skipped-budget" and rep.ok


def test_bc3_violation_is_documented_and_not_coarse():
    rep = classification_report([("BC", 3)])
    c = rep.checks[0]
    assert c.status == "expected-fail"
    (viol,) = c.witness["violations"]
    assert viol["type"] == ["C3"] and viol["coarse_compatible"] is False
    assert classification_report([("BC", 3)], known={}).checks[0].status == "fail"


def test_coarse_compatible(vec):
    bc1 = build_root_system("BC", 1)
    e, two = bc1.index(vec(1)), bc1.index(vec(2))
    assert coarse_compatible(bc1, [e, two])
    assert not coarse_compatible(bc1, [e])


def test_subsystem_types():
    b3 = build_root_system("B", 3)
    assert subsystem_type(b3, range(len(b3.roots))) == ["B3"]
    long_idx = [i for i, r in enumerate(b3.roots) if r.dot(r) == 2]
    assert canonical_types(subsystem_type(b3, long_idx)) == ["A3"]
    assert canonical_types(["D2"]) == ["A1", "A1"]


@pytest.mark.parametrize("family,rank", [("F4", 4), ("C", 4), ("B", 3), ("G2", 2), ("C", 8), ("B", 8), ("D", 4)])
def test_exceptional_checks_pass(family, rank):
    rep = exceptional_checks(build_root_system(family, rank))
    assert rep.ok and rep.checks, rep.text_summary()


def test_f4_short_classes():
    f4 = build_root_system("F4", 4)
    cls = short_classes(f4)
    assert sorted(bin(c).count("1") for c in cls) == [8, 8, 8]
