import random
from fractions import Fraction
from math import comb

import pytest
from conftest import F
from hypothesis import given, settings
from hypothesis import strategies as st

from gcone import linalg
from gcone.cayley import orthant, weighted_projective_cone
from gcone.cone import LatticePolytope, cone_from_rays, lattice_points, polar_dual
from gcone.errors import NotFullDimensionalError, NotGorensteinError, NotPointedError
from gcone.gorenstein import (
    Status,
    degree,
    gorenstein_point,
    gorenstein_status,
    graded_point_count,
    index_rescaled_lattices,
    is_gorenstein,
    is_reflexive_polytope,
    is_reflexive_polytope_via_cone,
    reflexive_data,
    reflexive_index_equivalence,
    support_polytope,
)
from gcone.lattice import Lattice, lattice_from_congruence

Z2 = Lattice.standard(2)
THIRD = Fraction(1, 3)


def quintic():
    return weighted_projective_cone([1] * 5, 5)[0]


def cubic_fourfold():
    return weighted_projective_cone([1] * 6, 3)[0]


def test_gorenstein_points():
    assert gorenstein_point(orthant(Lattice.standard(3))) == F(1, 1, 1)
    assert gorenstein_point(cone_from_rays(Z2, [(1, 0), (1, 2)])) == F(1, 0)
    n = gorenstein_point(quintic())
    assert n == (Fraction(1, 5),) * 5
    assert quintic().lattice_N.contains(n)


def test_is_gorenstein_examples():
    assert is_gorenstein(orthant(Z2))
    assert is_gorenstein(cone_from_rays(Z2, [(1, 0), (1, 3)]))
    c = cone_from_rays(Z2, [(2, 1), (1, 2)])
    assert gorenstein_status(c) == (Status.NOT_INTEGRAL, (THIRD, THIRD))
    assert not is_gorenstein(c)


def test_infeasible_system():
    # four rays of a square pyramid that do not lie on one hyperplane
    c = cone_from_rays(Lattice.standard(3), [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 2)])
    assert gorenstein_status(c)[0] is Status.INFEASIBLE


def test_requires_pointed_full_dimensional():
    with pytest.raises(NotPointedError):
        gorenstein_point(cone_from_rays(Z2, [(1, 0), (-1, 0), (0, 1)]))
    with pytest.raises(NotFullDimensionalError):
        gorenstein_point(cone_from_rays(Lattice.standard(3), [(1, 0, 0), (0, 1, 0)]))


def test_support_examples():
    assert support_polytope(orthant(Z2)).vertices == (F(0, 1), F(1, 0))
    S = support_polytope(cone_from_rays(Z2, [(1, 0), (1, 2)]))
    assert S.vertices == (F(1, 0), F(1, 2))
    assert lattice_points(S) == [F(1, 0), F(1, 1), F(1, 2)]
    assert set(support_polytope(quintic()).vertices) == {
        tuple(Fraction(5 * (i == j)) for j in range(5)) for i in range(5)}
    with pytest.raises(NotGorensteinError):
        support_polytope(cone_from_rays(Z2, [(2, 1), (1, 2)]))


def test_reflexive_examples():
    rd = reflexive_data(cone_from_rays(Z2, [(1, 0), (1, 2)]))
    assert (rd.index, rd.n_sigma, rd.m_sigma_check) == (1, F(1, 0), F(1, 1))
    assert reflexive_data(cubic_fourfold()).index == 2
    M = Lattice.standard(6).with_generators((THIRD,) * 6)
    rd = reflexive_data(orthant(M))
    assert rd.n_sigma == F(1, 1, 1, 1, 1, 1)
    assert rd.m_sigma_check == (THIRD,) * 6
    assert rd.index == 2


def test_degree():
    c = cone_from_rays(Z2, [(1, 0), (1, 2)])
    assert all(degree(c, r) == 1 for r in c.rays)
    assert degree(c, (0, 0)) == 0
    assert degree(c, (1, 1)) == 1
    with pytest.raises(ValueError):
        degree(c, (-1, 0))


def test_graded_counts():
    c = cone_from_rays(Z2, [(1, 0), (1, 2)])
    assert graded_point_count(c, 0) == 1
    assert graded_point_count(c, 1) == 3
    assert graded_point_count(quintic(), 1) == comb(9, 4) == 126


@pytest.mark.parametrize("n,w0,k", [(5, 5, 1), (6, 3, 1), (6, 3, 2), (4, 2, 3)])
def test_graded_counts_stars_and_bars(n, w0, k):
    c, _ = weighted_projective_cone([1] * n, w0)
    # degree-k points are monomials of degree k * w0 in n variables
    assert graded_point_count(c, k) == comb(k * w0 + n - 1, n - 1)


def test_degree_is_additive():
    c = cubic_fourfold()
    rng = random.Random(3)
    pts = lattice_points(support_polytope(c))
    for _ in range(20):
        a, b = rng.choice(pts), rng.choice(pts)
        assert degree(c, linalg.add(a, b)) == degree(c, a) + degree(c, b) == 2


def test_index_rescaled_lattices():
    c = cubic_fourfold()
    M1, N1 = index_rescaled_lattices(c, 1)
    assert (M1, N1) == (c.lattice_M, c.lattice_N)
    M2, N2 = index_rescaled_lattices(c, 2)
    assert M2.dual() == N2
    sigma2 = cone_from_rays(M2, c.rays)
    rays2 = set(sigma2.rays)
    assert rays2 == {tuple(2 * x for x in r) for r in c.rays}
    M5, N5 = index_rescaled_lattices(quintic(), 5)
    # n_sigma / 5 = (1/25, ..., 1/25) joins N-bar = Z^5 + Z(1/5, ...)
    assert N5 == Lattice.standard(5).with_generators((Fraction(1, 25),) * 5)
    assert M5.dual() == N5
    assert M5 == lattice_from_congruence(5, [1] * 5, 25)


def test_reflexive_polytopes():
    assert is_reflexive_polytope(LatticePolytope(Z2, [(1, 0), (0, 1), (-1, -1)]))
    assert not is_reflexive_polytope(LatticePolytope(Z2, [(0, 0), (1, 0), (0, 1), (1, 1)]))
    assert is_reflexive_polytope(LatticePolytope(Z2, [(1, 1), (1, -1), (-1, 1), (-1, -1)]))
    with pytest.raises(NotFullDimensionalError):
        is_reflexive_polytope(LatticePolytope(Z2, [(0, 0), (1, 0)]))


def test_reflexivity_is_translation_invariant():
    sq = LatticePolytope(Z2, [(1, 1), (1, -1), (-1, 1), (-1, -1)])
    moved = sq.translate((3, -2))
    assert is_reflexive_polytope(moved) and is_reflexive_polytope_via_cone(moved)


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=6))
@settings(max_examples=120, deadline=None)
def test_two_reflexivity_tests_agree(pts):
    P = LatticePolytope(Z2, pts)
    if not P.is_full_dimensional:
        return
    assert is_reflexive_polytope(P) == is_reflexive_polytope_via_cone(P)


def test_reflexive_polar_involution():
    for verts in ([(1, 0), (0, 1), (-1, -1)], [(1, 1), (1, -1), (-1, 1), (-1, -1)],
                  [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)]):
        P = LatticePolytope(Z2, verts)
        assert is_reflexive_polytope(P)
        assert polar_dual(polar_dual(P)) == P
        assert is_reflexive_polytope(polar_dual(P))


@pytest.mark.parametrize("make,r,expected_index", [
    (cubic_fourfold, 2, 2), (quintic, 1, 1), (cubic_fourfold, 1, 2), (cubic_fourfold, 3, 2),
])
def test_index_equivalence(make, r, expected_index):
    c = make()
    assert reflexive_data(c).index == expected_index
    assert reflexive_index_equivalence(c, r)


def test_index_equivalence_non_reflexive_gorenstein():
    # Gorenstein but the dual is not: both sides must say no for every r
    c = cone_from_rays(Lattice.standard(3), [(1, 0, 0), (1, 2, 0), (1, 0, 2)])
    assert is_gorenstein(c) and reflexive_data(c) is None
    assert all(reflexive_index_equivalence(c, r) for r in (1, 2, 3))
