"""Cayley cones, weighted projective cones and splittings.

The Cayley cone of polytopes ``D_1, ..., D_r`` in a lattice ``M`` lives in
``Z^r + M`` and is generated by ``(e_i, v)`` for the vertices ``v`` of
``D_i``. A splitting of a cone is the reverse direction: dual vectors
``n_1, ..., n_r`` that cut the ray set into the Cayley blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .cone import (
    Cone,
    LatticePolytope,
    cone_from_rays,
    minkowski_sum,
    polytope_product,
    standard_simplex,
)
from .errors import DimensionMismatchError, GconeError, NotReflexiveError
from .gorenstein import (
    gorenstein_point,
    is_reflexive_polytope,
    reflexive_data,
    support_polytope,
)
from .lattice import Lattice, lattice_from_congruence, segment_is_primitive


@dataclass(frozen=True)
class CayleyInput:
    """``r`` lattice polytopes in a common rank-``d`` lattice.

    The Minkowski sum of the polytopes must be full-dimensional.
    """

    base_lattice: Lattice
    polytopes: tuple

    def __post_init__(self):
        polys = tuple(self.polytopes)
        if not polys:
            raise GconeError("need at least one polytope")
        for P in polys:
            if P.lattice != self.base_lattice:
                raise DimensionMismatchError("polytope is not over the base lattice")
        if not minkowski_sum(*polys).is_full_dimensional:
            raise GconeError("the Minkowski sum of the polytopes is not full-dimensional")
        object.__setattr__(self, "polytopes", polys)

    @property
    def r(self) -> int:
        return len(self.polytopes)

    @property
    def d(self) -> int:
        return self.base_lattice.ambient_dim

    @property
    def lattice(self) -> Lattice:
        return Lattice.direct_sum(Lattice.standard(self.r), self.base_lattice)

    def generators(self) -> list[tuple]:
        r = self.r
        return [tuple(int(i == j) for j in range(r)) + tuple(v)
                for i, P in enumerate(self.polytopes) for v in P.vertices]


def cayley_cone(inp: CayleyInput) -> Cone:
    c = cone_from_rays(inp.lattice, inp.generators())
    expected = (Fraction(1),) * inp.r + (Fraction(0),) * inp.d
    if gorenstein_point(c) != expected:
        raise GconeError("Cayley cone failed its Gorenstein certificate")  # library bug
    return c


def cayley_support(inp: CayleyInput) -> LatticePolytope:
    return support_polytope(cayley_cone(inp))


def cayley_reflexivity_consistent(inp: CayleyInput) -> bool:
    """Reflexive of index ``r`` for the Cayley cone iff the Minkowski sum is reflexive."""
    data = reflexive_data(cayley_cone(inp))
    left = data is not None and data.index == inp.r
    right = is_reflexive_polytope(minkowski_sum(*inp.polytopes))
    return left == right


def orthant(L: Lattice) -> Cone:
    n = L.ambient_dim
    return cone_from_rays(L, [tuple(int(i == j) for j in range(n)) for i in range(n)])


def weighted_projective_cone(weights, w0: int) -> tuple[Cone, int]:
    """Positive orthant over ``{x : sum(w_i x_i) = 0 mod w0}`` and its index.

    Requires every weight to divide ``w0`` and ``w0`` to divide the weight
    sum; the index is ``sum(weights) / w0``.
    """
    weights = [int(w) for w in weights]
    if w0 < 1 or any(w < 1 for w in weights):
        raise GconeError("weights and w0 must be positive")
    bad = [w for w in weights if w0 % w]
    if bad:
        raise GconeError(f"weights {bad} do not divide w0 = {w0}")
    if sum(weights) % w0:
        raise GconeError(f"weight sum {sum(weights)} is not a multiple of w0 = {w0}")
    r = sum(weights) // w0
    c = orthant(lattice_from_congruence(len(weights), weights, w0))
    data = reflexive_data(c)
    if data is None or data.index != r:
        raise GconeError("weighted projective cone is not reflexive of the expected index")
    return c, r


# ---------------------------------------------------------------------------
# splittings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Splitting:
    """One way of writing a cone as a Cayley cone.

    ``parts`` holds ray indices per block. ``slice_polytopes[i]`` is the
    convex hull of block ``i`` translated by ``-translations[i]``, where the
    translations satisfy ``<w_i, n_j> = [i == j]``; the slices therefore lie
    in the common kernel of the ``n_vectors``.
    """

    parts: tuple
    n_vectors: tuple
    translations: tuple
    slice_polytopes: tuple


class _System:
    """Incremental consistency check for ``<e, n> = b`` over added rows."""

    __slots__ = ("rows",)

    def __init__(self, rows=()):
        self.rows = rows  # echelon rows: (pivot, coefficients, rhs)

    def add(self, e, b):
        """New system with the row added, or ``None`` if inconsistent."""
        v = list(e)
        b = Fraction(b)
        for piv, row, rb in self.rows:
            f = v[piv]
            if f:
                v = [x - f * y for x, y in zip(v, row)]
                b -= f * rb
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            return self if b == 0 else None
        inv = 1 / v[piv]
        v = [x * inv for x in v]
        b *= inv
        new = []
        for p, row, rb in self.rows:
            f = row[piv]
            if f:
                row = [x - f * y for x, y in zip(row, v)]
                rb -= f * b
            new.append((p, row, rb))
        new.append((piv, v, b))
        return _System(tuple(new))

    def solution(self, n):
        x = [Fraction(0)] * n
        for piv, _, rb in self.rows:
            x[piv] = rb
        return tuple(x)


def find_splittings(c: Cone, r: int) -> list[Splitting]:
    """All splittings of a reflexive cone into ``r`` Cayley blocks.

    Exhaustive over set partitions of the rays (up to block order), pruned
    by linear infeasibility and by requiring rays in different blocks to
    span segments with no interior lattice point.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if reflexive_data(c) is None:
        raise NotReflexiveError("splittings are only searched on reflexive cones")
    M = c.lattice_M
    rays = list(c.rays)
    m, n = len(rays), c.ambient_dim
    if r > m:
        return []
    prim = [[a != b and segment_is_primitive(M, rays[a], rays[b]) for b in range(m)]
            for a in range(m)]
    block_of = [-1] * m
    found = []

    def search(a, systems, unopened):
        nb = len(systems)
        if m - a < r - nb:
            return
        if a == m:
            if nb == r:
                s = _finish(c, rays, block_of, [sys.solution(n) for sys in systems], r)
                if s is not None:
                    found.append(s)
            return
        e = rays[a]
        options = list(range(nb)) + ([nb] if nb < r else [])
        for i in options:
            if any(block_of[b] != i and not prim[a][b] for b in range(a)):
                continue
            new_systems = []
            for j in range(nb):
                s = systems[j].add(e, 1 if j == i else 0)
                if s is None:
                    break
                new_systems.append(s)
            else:
                if i == nb:
                    s = unopened.add(e, 1)
                    if s is None:
                        continue
                    new_systems.append(s)
                new_unopened = unopened
                if len(new_systems) < r:
                    new_unopened = unopened.add(e, 0)
                    # the zero system always stays consistent
                block_of[a] = i
                search(a + 1, new_systems, new_unopened)
                block_of[a] = -1

    search(0, [], _System())
    return found


def _finish(c, rays, block_of, ns, r):
    M, N = c.lattice_M, c.lattice_N
    if any(not N.contains(nv) for nv in ns):
        return None
    V = [[int(linalg.dot(b, nv)) for nv in ns] for b in M.basis]
    H, U = linalg.hermite_normal_form(V)
    if [row for row in H[:r]] != linalg.identity(r) or any(any(row) for row in H[r:]):
        return None
    ws = [M.point(U[i]) for i in range(r)]
    parts = tuple(tuple(a for a in range(len(rays)) if block_of[a] == i) for i in range(r))
    slices = tuple(LatticePolytope(M, [linalg.sub(rays[a], ws[i]) for a in part])
                   for i, part in enumerate(parts))
    return Splitting(parts, tuple(ns), tuple(ws), slices)


def segment_obstruction_scan(c: Cone) -> list[tuple]:
    """Ray pairs whose segment has no interior lattice point.

    Rays in different blocks of any splitting must form such a pair, so an
    empty result rules out every splitting into two or more blocks.
    """
    gorenstein_point(c)  # validates pointed and full-dimensional
    return [(a, b) for a, b in combinations(c.rays, 2)
            if segment_is_primitive(c.lattice_M, a, b)]


# ---------------------------------------------------------------------------
# Schimmrigk's two-hypersurface family
# ---------------------------------------------------------------------------

def schimmrigk_input(k: int, l: int) -> CayleyInput:
    """Polytopes of the bidegrees ``(k+1, 1)`` and ``(0, l)`` on ``P^k x P^l``.

    The two degrees add up to the anticanonical class ``(k+1, l+1)``.
    """
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    d1 = polytope_product(standard_simplex(k, k + 1), standard_simplex(l, 1))
    d2 = polytope_product(standard_simplex(k, 0), standard_simplex(l, l))
    return CayleyInput(d1.lattice, (d1, d2))


def schimmrigk_cayley(k: int, l: int) -> Cone:
    """Cayley cone of :func:`schimmrigk_input`, checked reflexive of index 2."""
    c = cayley_cone(schimmrigk_input(k, l))
    data = reflexive_data(c)
    if data is None or data.index != 2:
        raise GconeError("Schimmrigk cone is not reflexive of index 2")
    return c


def schimmrigk_weights(k: int, l: int) -> tuple[list[int], int]:
    """Weights ``(l-1)^(k+1), (k+1)^(l+1)`` and degree ``(k+1) l`` of the weighted model."""
    return [l - 1] * (k + 1) + [k + 1] * (l + 1), (k + 1) * l
