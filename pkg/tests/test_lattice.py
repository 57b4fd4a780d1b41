from fractions import Fraction

import pytest
from conftest import F, lattices, multiples_scan
from hypothesis import given, settings
from hypothesis import strategies as st

from gcone import linalg
from gcone.errors import (
    InvalidLatticeError,
    NotInLatticeError,
    NotSublatticeError,
    ZeroVectorError,
)
from gcone.lattice import (
    Lattice,
    dual_lattice,
    interior_lattice_points_of_segment,
    lattice_from_congruence,
    lattice_with_generator,
    primitive,
    sublattice_index,
)


def third(n):
    return Lattice.standard(n).with_generators((Fraction(1, 3),) * n)


def test_singular_basis_rejected():
    with pytest.raises(InvalidLatticeError, match="singular basis"):
        Lattice(((1, 0), (0, 0)))


def test_equality_is_hnf_equality():
    assert Lattice(((1, 1), (0, 1))) == Lattice.standard(2)
    assert Lattice(((2, 0), (0, 1))) != Lattice(((1, 0), (0, 2)))


def test_standard_lattice_is_self_dual():
    assert dual_lattice(Lattice.standard(4)) == Lattice.standard(4)


@pytest.mark.parametrize("n,m", [(5, 5), (6, 3)])
def test_dual_of_congruence_lattice(n, m):
    L = lattice_from_congruence(n, [1] * n, m)
    expected = Lattice.standard(n).with_generators((Fraction(1, m),) * n)
    assert dual_lattice(L) == expected


def test_contains():
    assert Lattice.standard(5).with_generators((Fraction(1, 5),) * 5).contains((Fraction(1, 5),) * 5)
    assert not Lattice.standard(2).contains((Fraction(1, 2), 0))
    assert lattice_from_congruence(6, [1] * 6, 3).contains((1, 1, 1, 0, 0, 0))


def test_integer_coordinates_error():
    with pytest.raises(NotInLatticeError):
        Lattice.standard(2).integer_coordinates((Fraction(1, 2), 0))


def test_primitive_examples():
    assert primitive(Lattice.standard(2), (2, 4)) == F(1, 2)
    L5 = lattice_from_congruence(5, [1] * 5, 5)
    e1 = (1, 0, 0, 0, 0)
    assert primitive(L5, e1) == multiples_scan(L5, e1) == F(5, 0, 0, 0, 0)
    L3 = third(6)
    e1 = (1, 0, 0, 0, 0, 0)
    assert primitive(L3, e1) == multiples_scan(L3, e1) == F(*e1)
    with pytest.raises(ZeroVectorError):
        primitive(Lattice.standard(2), (0, 0))


def test_sublattice_index_examples():
    L = third(6)
    assert sublattice_index(L, L) == 1
    assert sublattice_index(lattice_from_congruence(6, [1] * 6, 3), Lattice.standard(6)) == 3
    M3 = Lattice.direct_sum(third(3), third(3), third(3))
    assert sublattice_index(third(9), M3) == 9
    with pytest.raises(NotSublatticeError):
        sublattice_index(Lattice.standard(2), Lattice(((2, 0), (0, 1))))


def test_lattice_from_congruence_examples():
    assert lattice_from_congruence(2, [1, 1], 1) == Lattice.standard(2)
    L = lattice_from_congruence(4, [1, 1, 1, 1], 2)
    assert L.contains((1, 1, 0, 0)) and L.contains((2, 0, 0, 0))
    assert not L.contains((1, 0, 0, 0))
    assert sublattice_index(L, Lattice.standard(4)) == 2


def test_lattice_with_generator_examples():
    Z2 = Lattice.standard(2)
    assert lattice_with_generator(Z2, (1, 0)) == Z2
    assert sublattice_index(Lattice.standard(6), lattice_with_generator(Lattice.standard(6), (Fraction(1, 3),) * 6)) == 3
    half = lattice_with_generator(Z2, (Fraction(1, 2), Fraction(1, 2)))
    assert half.contains((Fraction(1, 2), Fraction(1, 2)))
    assert sublattice_index(Z2, half) == 2


def test_segment_points():
    L = lattice_from_congruence(4, [1] * 4, 2)
    assert interior_lattice_points_of_segment(L, (2, 0, 0, 0), (0, 2, 0, 0)) == [F(1, 1, 0, 0)]
    Z2 = Lattice.standard(2)
    assert interior_lattice_points_of_segment(Z2, (0, 0), (1, 1)) == []
    assert interior_lattice_points_of_segment(Z2, (0, 0), (3, 0)) == [F(1, 0), F(2, 0)]
    with pytest.raises(NotInLatticeError):
        interior_lattice_points_of_segment(Z2, (0, 0), (Fraction(1, 2), 0))


@given(lattices())
@settings(max_examples=80, deadline=None)
def test_dual_is_involution(L):
    assert dual_lattice(dual_lattice(L)) == L


@given(lattices(), st.data())
@settings(max_examples=80, deadline=None)
def test_dual_membership_is_integral_pairing(L, data):
    n = L.ambient_dim
    y = tuple(Fraction(data.draw(st.integers(-6, 6)), data.draw(st.integers(1, 6))) for _ in range(n))
    integral = all(linalg.dot(b, y).denominator == 1 for b in L.basis)
    assert dual_lattice(L).contains(y) == integral


@given(lattices(), st.data())
@settings(max_examples=80, deadline=None)
def test_primitive_divides(L, data):
    n = L.ambient_dim
    coords = [data.draw(st.integers(-4, 4)) for _ in range(n)]
    v = L.point(coords)
    if not any(v):
        return
    p = primitive(L, v)
    ratios = {x / y for x, y in zip(v, p) if y}
    (k,) = ratios
    assert k.denominator == 1 and k >= 1


@given(st.integers(1, 5), st.lists(st.integers(0, 9), min_size=5, max_size=5), st.integers(1, 12))
@settings(max_examples=80, deadline=None)
def test_congruence_index(n, weights, m):
    from math import gcd
    w = weights[:n]
    g = 0
    for x in w:
        g = gcd(g, x)
    L = lattice_from_congruence(n, w, m)
    assert sublattice_index(L, Lattice.standard(n)) == m // gcd(m, g)


def test_index_multiplicative_along_chain():
    A = lattice_from_congruence(6, [1] * 6, 3)
    B = Lattice.standard(6)
    C = third(6)
    assert sublattice_index(A, C) == sublattice_index(A, B) * sublattice_index(B, C) == 9
