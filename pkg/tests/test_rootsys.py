from fractions import Fraction

import pytest

from lieroots import ExactVec, build_root_system, cartan_matrix, coroot, is_root, pairing, positive_roots
from lieroots.rootsys import RootSystemError, cartan_integer, supported_systems, verify_bd_tables, check_diagram_fixture

from conftest import textbook_roots

# textbook cardinalities |Φ| (independent of the construction code)
CARD = {"A": lambda n: n * (n + 1), "B": lambda n: 2 * n * n, "C": lambda n: 2 * n * n,
        "BC": lambda n: 2 * n * (n + 1), "D": lambda n: 2 * n * (n - 1)}
EXC_CARD = {"E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12}


@pytest.mark.parametrize("family", ["A", "B", "C", "BC", "D"])
@pytest.mark.parametrize("rank", range(1, 9))
def test_classical_roots_match_textbook(family, rank):
    if (family, rank) not in supported_systems(8):
        with pytest.raises(RootSystemError):
            build_root_system(family, rank)
        return
    rs = build_root_system(family, rank)
    got = {r.coords for r in rs.roots}
    assert got == textbook_roots(family, rank)
    assert len(rs.roots) == CARD[family](rank)


@pytest.mark.parametrize("name", list(EXC_CARD))
def test_exceptional_cardinalities(name):
    rs = build_root_system(name, int(name[1]))
    assert len(rs.roots) == EXC_CARD[name]


def test_family_letter_aliases():
    assert build_root_system("E", 6).roots == build_root_system("E6", 6).roots
    assert build_root_system("F", 4).name == "F4"
    assert build_root_system("G", 2).name == "G2"


@pytest.mark.parametrize("family,rank", [("A", 0), ("B", 1), ("D", 2), ("E", 5), ("F", 3), ("X", 3)])
def test_rejects_inadmissible(family, rank):
    with pytest.raises((RootSystemError, KeyError)):
        build_root_system(family, rank)


@pytest.mark.parametrize("family,rank", supported_systems(8))
def test_simple_coefficients_are_sign_uniform_integers(family, rank):
    rs = build_root_system(family, rank)
    for c in rs.simple_coeffs:
        assert all(x >= 0 for x in c) or all(x <= 0 for x in c)
        assert any(c)
        assert all(isinstance(x, int) for x in c)
    assert len(rs.positive_indices()) * 2 == len(rs.roots)
    # the positive roots read off by coefficients agree with positive_roots()
    assert set(positive_roots(rs)) == {rs.roots[i] for i in rs.positive_indices()}


def test_coroot_and_pairing(vec):
    g2 = build_root_system("G2", 2)
    long = g2.simple[0]
    assert coroot(long) == long.scale(Fraction(1, 3))
    assert cartan_integer(g2.simple[1], long) == -1
    assert cartan_integer(long, g2.simple[1]) == -3
    assert pairing(long, g2.simple[1]) == -3  # plain inner product
    with pytest.raises(RootSystemError):
        coroot(vec(0, 0, 0))


def test_cartan_matrices_textbook():
    assert cartan_matrix(build_root_system("B", 2).simple) == [[2, -1], [-2, 2]]
    assert cartan_matrix(build_root_system("C", 2).simple) == [[2, -2], [-1, 2]]
    assert cartan_matrix(build_root_system("G2", 2).simple) == [[2, -1], [-3, 2]]
    a3 = cartan_matrix(build_root_system("A", 3).simple)
    assert a3 == [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]


def test_is_root_and_dimension_mismatch(vec):
    a2 = build_root_system("A", 2)
    assert is_root(a2, vec(1, 0, -1))
    assert not is_root(a2, vec(1, 1, -2))
    with pytest.raises(RootSystemError):
        a2.index(vec(1, -1))


def test_positive_roots_rejects_non_base(vec):
    a2 = build_root_system("A", 2)
    with pytest.raises(RootSystemError):
        positive_roots(a2, [vec(1, -1, 0), vec(1, 0, -1)])


def test_exactvec_normalization():
    v = ExactVec.of([Fraction(1, 2), Fraction(-1, 2)])
    assert v.den == 2 and v.num == (1, -1)
    assert v + v == ExactVec.of([1, -1])
    assert (v * 2).den == 1


def test_bd_tables_and_diagram_fixture():
    assert verify_bd_tables(8).ok
    assert check_diagram_fixture(8).ok


def test_e8_roots_are_integral_or_half_integral_norm_two():
    e8 = build_root_system("E8", 8)
    for r in e8.roots:
        assert r.dot(r) == 2
        assert r.den in (1, 2)
