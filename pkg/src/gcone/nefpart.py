"""Nef-partitions of reflexive polytopes and their duals.

A nef-partition is given by a reflexive polytope ``delta`` in ``M`` and a
partition of the vertices ``e_1, ..., e_k`` of its polar dual (the fan rays
in ``N``) into blocks ``J_1, ..., J_r``. Block ``i`` defines

    Delta_i = {x : <x, e_j> >= -1 for j in J_i, <x, e_j> >= 0 otherwise},

and the dual side is ``nabla_i = conv({0} + {e_j : j in J_i})``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cayley import CayleyInput, cayley_cone
from .cone import (
    Cone,
    LatticePolytope,
    _facets,
    dual_cone,
    minkowski_sum,
    polar_dual,
)
from .errors import (
    InvalidPartitionError,
    NefPartitionError,
    NotLatticePolytopeError,
    NotReflexiveError,
    UnboundedError,
)
from .gorenstein import is_reflexive_polytope


@dataclass(frozen=True, eq=False)
class NefPartition:
    """A nef-partition; ``partition`` holds 0-based indices into ``rays``.

    ``DualNefPartition`` is the same shape with the roles of ``M`` and ``N``
    exchanged. Equality ignores the order in which rays are listed: two
    partitions are equal when they have the same polytope and the same
    ray sets block by block.
    """

    delta: LatticePolytope
    rays: tuple
    partition: tuple
    part_polytopes: tuple

    @property
    def r(self) -> int:
        return len(self.partition)

    def ray_blocks(self) -> tuple:
        return tuple(frozenset(self.rays[j] for j in block) for block in self.partition)

    def _key(self):
        return (self.delta, self.ray_blocks())

    def __eq__(self, other):
        if not isinstance(other, NefPartition):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


DualNefPartition = NefPartition


def fan_rays(delta: LatticePolytope) -> tuple:
    """Vertices of the polar dual, sorted."""
    return polar_dual(delta).vertices


def _check_partition(rays, partition):
    k = len(rays)
    blocks = tuple(tuple(int(j) for j in block) for block in partition)
    if not blocks or any(not b for b in blocks):
        raise InvalidPartitionError("blocks must be nonempty")
    flat = [j for b in blocks for j in b]
    if any(j < 0 or j >= k for j in flat):
        raise InvalidPartitionError(f"block index out of range 0..{k - 1}")
    if sorted(flat) != list(range(k)):
        raise InvalidPartitionError("blocks must be disjoint and cover all rays")
    return blocks


def _resolve_rays(delta, rays):
    if not is_reflexive_polytope(delta):
        raise NotReflexiveError("delta is not a reflexive polytope")
    if any(c <= 0 for c, _ in delta.inequalities):
        raise NotReflexiveError("delta must have the origin as its interior point")
    polar = fan_rays(delta)
    if rays is None:
        return polar
    rays = tuple(linalg.vec(e) for e in rays)
    if sorted(rays) != sorted(polar) or len(set(rays)) != len(rays):
        raise InvalidPartitionError("rays must be exactly the vertices of the polar dual")
    return rays


def _part_vertices(rays, block):
    """Vertices of ``{x : <x, e_j> >= -[j in block]}`` (rational in general)."""
    n = len(rays[0])
    # homogenised normals (psi_j, e_j); the cone they cut out is the cone over the polyhedron
    normals = [linalg.primitive_integer((Fraction(int(j in block)),) + tuple(e))
               for j, e in enumerate(rays)]
    normals.append((1,) + (0,) * n)
    gens, eqs = _facets(normals)
    assert not eqs  # fan rays span N
    verts = []
    for g in gens:
        if g[0] == 0:
            raise UnboundedError("part polyhedron is unbounded")
        verts.append(tuple(Fraction(x, g[0]) for x in g[1:]))
    return sorted(set(verts))


def part_polytopes(delta: LatticePolytope, partition, rays=None) -> tuple:
    rays = _resolve_rays(delta, rays)
    blocks = _check_partition(rays, partition)
    out = []
    for block in blocks:
        verts = _part_vertices(rays, set(block))
        if not all(delta.lattice.contains(v) for v in verts):
            raise NotLatticePolytopeError("part polytope has non-lattice vertices")
        out.append(LatticePolytope(delta.lattice, verts))
    return tuple(out)


def nef_partition_failures(delta: LatticePolytope, partition, rays=None) -> list[str]:
    """Reasons the data fails to be a nef-partition; empty when it is one."""
    rays = _resolve_rays(delta, rays)
    blocks = _check_partition(rays, partition)
    failures = []
    parts = []
    for i, block in enumerate(blocks):
        verts = _part_vertices(rays, set(block))
        if not all(delta.lattice.contains(v) for v in verts):
            failures.append(f"part {i + 1} has non-lattice vertices")
            continue
        parts.append(verts)
        for j, e in enumerate(rays):
            low = min(linalg.dot(v, e) for v in verts)
            want = -1 if j in block else 0
            if low != want:
                failures.append(f"part {i + 1}: min <x, e_{j + 1}> = {low}, expected {want}")
    if not failures:
        total = minkowski_sum(*(LatticePolytope(delta.lattice, v) for v in parts))
        if total.vertices != delta.vertices:
            failures.append("parts do not add up to delta")
    return failures


def is_nef_partition(delta: LatticePolytope, partition, rays=None) -> bool:
    """Integral parts, tight support values on every ray, and Minkowski reassembly."""
    return not nef_partition_failures(delta, partition, rays)


def make_nef_partition(delta: LatticePolytope, partition, rays=None) -> NefPartition:
    rays = _resolve_rays(delta, rays)
    failures = nef_partition_failures(delta, partition, rays)
    if failures:
        raise NefPartitionError("; ".join(failures))
    blocks = _check_partition(rays, partition)
    return NefPartition(delta, rays, blocks, part_polytopes(delta, blocks, rays))


def nabla_polytopes(np_: NefPartition) -> tuple:
    """``conv({0} + rays of block i)`` for each block."""
    N = np_.delta.lattice.dual()
    zero = (Fraction(0),) * N.ambient_dim
    return tuple(LatticePolytope(N, [zero] + [np_.rays[j] for j in block])
                 for block in np_.partition)


def dual_nef_partition(np_: NefPartition) -> NefPartition:
    """The dual nef-partition, checked to be a nef-partition itself.

    Its polytope is the Minkowski sum of the nablas; its rays are the
    vertices of the polar of that sum (the convex hull of the union of the
    original parts), and a ray lands in block ``i`` when it is a vertex of
    the original ``i``-th part.
    """
    nablas = nabla_polytopes(np_)
    dual_delta = minkowski_sum(*nablas)
    if not is_reflexive_polytope(dual_delta):
        raise NefPartitionError("sum of the nablas is not reflexive")
    polar = fan_rays(dual_delta)
    # list the dual rays block by block so the partition reads 1..k in order
    dual_rays, blocks = [], []
    for P in np_.part_polytopes:
        mine = [y for y in polar if y in P.vertices]
        blocks.append(tuple(range(len(dual_rays), len(dual_rays) + len(mine))))
        dual_rays.extend(mine)
    if sorted(dual_rays) != list(polar):
        raise NefPartitionError("dual rays are not distributed over the parts")
    dual_rays = tuple(dual_rays)
    failures = nef_partition_failures(dual_delta, blocks, dual_rays)
    if failures:
        raise NefPartitionError("dual is not a nef-partition: " + "; ".join(failures))
    dual = NefPartition(dual_delta, dual_rays, tuple(blocks),
                        part_polytopes(dual_delta, blocks, dual_rays))
    if dual.part_polytopes != nablas:
        raise NefPartitionError("dual parts differ from the nablas")
    return dual


def check_pairing(np_: NefPartition, dual: NefPartition) -> bool:
    """``<x, y> >= -1`` on matching parts and ``>= 0`` otherwise, over all vertex pairs."""
    if np_.r != dual.r:
        raise InvalidPartitionError("partitions have different numbers of parts")
    for i, P in enumerate(np_.part_polytopes):
        for j, Q in enumerate(dual.part_polytopes):
            if len(P.vertices[0]) != len(Q.vertices[0]):
                raise ValueError("dimension mismatch")
            bound = -1 if i == j else 0
            if any(linalg.dot(x, y) < bound for x in P.vertices for y in Q.vertices):
                return False
    return True


def nef_cayley_cones(np_: NefPartition) -> tuple[Cone, Cone]:
    """Cayley cones of the parts and of the nablas."""
    M = np_.delta.lattice
    sigma = cayley_cone(CayleyInput(M, np_.part_polytopes))
    sigma_star = cayley_cone(CayleyInput(M.dual(), nabla_polytopes(np_)))
    return sigma, sigma_star


def verify_cone_duality(np_: NefPartition) -> bool:
    """The dual of the parts' Cayley cone equals the nablas' Cayley cone."""
    sigma, sigma_star = nef_cayley_cones(np_)
    dual = dual_cone(sigma)
    return dual.lattice_M == sigma_star.lattice_M and dual.rays == sigma_star.rays
