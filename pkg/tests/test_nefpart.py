import pytest

from gcone.cone import LatticePolytope, dual_cone, minkowski_sum, polar_dual
from gcone.errors import InvalidPartitionError, NefPartitionError, NotReflexiveError
from gcone.gorenstein import is_reflexive_polytope, reflexive_data
from gcone.lattice import Lattice
from gcone.nefpart import (
    NefPartition,
    check_pairing,
    dual_nef_partition,
    is_nef_partition,
    make_nef_partition,
    nabla_polytopes,
    nef_cayley_cones,
    nef_partition_failures,
    part_polytopes,
    verify_cone_duality,
)

Z2 = Lattice.standard(2)
SQUARE = LatticePolytope(Z2, [(1, 1), (1, -1), (-1, 1), (-1, -1)])
SQUARE_RAYS = [(1, 0), (-1, 0), (0, 1), (0, -1)]
P2 = LatticePolytope(Z2, [(2, -1), (-1, 2), (-1, -1)])
P2_RAYS = [(1, 0), (0, 1), (-1, -1)]
TRIANGLE = LatticePolytope(Z2, [(1, 0), (0, 1), (-1, -1)])


def P(*pts):
    return LatticePolytope(Z2, pts)


@pytest.fixture(params=["square", "p2", "triangle"])
def nef(request):
    return {
        "square": lambda: make_nef_partition(SQUARE, [(0, 1), (2, 3)], SQUARE_RAYS),
        "p2": lambda: make_nef_partition(P2, [(0,), (1, 2)], P2_RAYS),
        "triangle": lambda: make_nef_partition(TRIANGLE, [(0, 1, 2)]),
    }[request.param]()


def test_part_polytopes_examples():
    assert part_polytopes(SQUARE, [(0, 1), (2, 3)], SQUARE_RAYS) == (P((-1, 0), (1, 0)), P((0, -1), (0, 1)))
    assert part_polytopes(P2, [(0,), (1, 2)], P2_RAYS) == (
        P((-1, 0), (0, 0), (-1, 1)), P((0, -1), (2, -1), (0, 1)))
    assert part_polytopes(TRIANGLE, [(0, 1, 2)]) == (TRIANGLE,)


def test_parts_contain_origin(nef):
    assert all(Q.contains((0, 0)) for Q in nef.part_polytopes)


def test_is_nef_partition():
    assert is_nef_partition(SQUARE, [(0, 1), (2, 3)], SQUARE_RAYS)
    assert is_nef_partition(P2, [(0,), (1, 2)], P2_RAYS)


def test_not_nef():
    # on the hexagon, splitting off one ray leaves non-tight support values
    hexagon = LatticePolytope(Z2, [(1, 0), (0, 1), (-1, -1), (1, 1), (-1, 0), (0, -1)])
    rays = polar_dual(hexagon).vertices
    assert nef_partition_failures(hexagon, [(0,), (1, 2, 3, 4, 5)], rays)
    with pytest.raises(NefPartitionError):
        make_nef_partition(hexagon, [(0,), (1, 2, 3, 4, 5)], rays)


@pytest.mark.parametrize("blocks", [[(0,), (1, 5)], [(0, 1), (1, 2)], [(0,), ()], []])
def test_malformed_blocks_raise(blocks):
    with pytest.raises(InvalidPartitionError):
        is_nef_partition(P2, blocks, P2_RAYS)


def test_wrong_rays_raise():
    with pytest.raises(InvalidPartitionError):
        is_nef_partition(P2, [(0,), (1, 2)], [(1, 0), (0, 1), (-1, 0)])


def test_delta_must_be_reflexive():
    with pytest.raises(NotReflexiveError):
        is_nef_partition(P((0, 0), (2, 0), (0, 2)), [(0, 1, 2)])


def test_dual_examples():
    sq = make_nef_partition(SQUARE, [(0, 1), (2, 3)], SQUARE_RAYS)
    d = dual_nef_partition(sq)
    assert d.part_polytopes == (P((-1, 0), (1, 0)), P((0, -1), (0, 1)))
    assert nabla_polytopes(sq) == d.part_polytopes
    p2 = make_nef_partition(P2, [(0,), (1, 2)], P2_RAYS)
    assert nabla_polytopes(p2) == (P((0, 0), (1, 0)), P((0, 0), (0, 1), (-1, -1)))


def test_dual_of_dual(nef):
    d = dual_nef_partition(nef)
    assert isinstance(d, NefPartition)
    assert dual_nef_partition(d) == nef
    assert d.r == nef.r


def test_dual_delta_is_reflexive_and_polar_recovers_parts(nef):
    d = dual_nef_partition(nef)
    total = minkowski_sum(*nabla_polytopes(nef))
    assert is_reflexive_polytope(total) and total == d.delta
    # the dual rays are the vertices of the hull of the union of the parts
    union = LatticePolytope(Z2, [v for Q in nef.part_polytopes for v in Q.vertices])
    assert set(d.rays) == set(union.vertices) == set(polar_dual(total).vertices)


def test_pairing(nef):
    assert check_pairing(nef, dual_nef_partition(nef))


def test_corrupted_pairing_fails():
    p2 = make_nef_partition(P2, [(0,), (1, 2)], P2_RAYS)
    d = dual_nef_partition(p2)
    shifted = (d.part_polytopes[0].translate((1, 0)),) + d.part_polytopes[1:]
    assert not check_pairing(p2, NefPartition(d.delta, d.rays, d.partition, shifted))


def test_pairing_dimension_mismatch():
    p2 = make_nef_partition(P2, [(0,), (1, 2)], P2_RAYS)
    other = make_nef_partition(SQUARE, [(0, 1), (2, 3)], SQUARE_RAYS)
    L3 = Lattice.standard(3)
    cube = LatticePolytope(L3, [(a, b, c) for a in (-1, 1) for b in (-1, 1) for c in (-1, 1)])
    big = make_nef_partition(cube, [(0, 1), (2, 3, 4, 5)])
    assert big.r == p2.r
    with pytest.raises(ValueError):
        check_pairing(p2, dual_nef_partition(big))
    assert check_pairing(other, dual_nef_partition(other))


def test_cone_duality(nef):
    assert verify_cone_duality(nef)
    sigma, sigma_star = nef_cayley_cones(nef)
    assert dual_cone(sigma_star) == sigma
    assert reflexive_data(sigma).index == nef.r


def test_r1_collapses_to_polar_duality():
    t = make_nef_partition(TRIANGLE, [(0, 1, 2)])
    _, sigma_star = nef_cayley_cones(t)
    assert set(sigma_star.rays) == {(1,) + v for v in polar_dual(TRIANGLE).vertices}
    assert dual_nef_partition(t).delta == polar_dual(TRIANGLE)
