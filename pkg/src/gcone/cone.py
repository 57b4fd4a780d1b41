"""Rational polyhedral cones and lattice polytopes.

Facets are found by the double description method over the integers. The
same routine applied to the facet normals returns the extreme rays, so a
cone built from arbitrary generators comes out with an irredundant ray list
and a facet list, both primitive in their lattices and sorted.

Non-pointed and lower-dimensional cones are allowed: their lineality space
and the equations of their linear span are kept as canonical (reduced row
echelon) bases, and rays/facets are taken in the orthogonal complements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import _kernels, linalg
from .errors import (
    DimensionMismatchError,
    NotFullDimensionalError,
    NotInLatticeError,
    NotLatticePolytopeError,
    OriginNotInteriorError,
    ZeroVectorError,
)
from .lattice import Lattice

# ---------------------------------------------------------------------------
# double description
# ---------------------------------------------------------------------------

def _extreme_rays(A, k):
    """Extreme rays of the pointed cone ``{t in Q^k : A @ t >= 0}``.

    ``A`` is an integer matrix of rank ``k``. Rays come back as primitive
    integer tuples.
    """
    chosen, base = [], []
    for i, row in enumerate(A):
        if linalg.rank(base + [row]) > len(base):
            chosen.append(i)
            base.append(row)
            if len(base) == k:
                break
    inv = linalg.inverse(base)
    rays = [linalg.primitive_integer([inv[r][j] for r in range(k)]) for j in range(k)]
    full = 0
    for i in chosen:
        full |= 1 << i
    masks = [full & ~(1 << chosen[j]) for j in range(k)]
    chosen_set = set(chosen)
    for i, a in enumerate(A):
        if i in chosen_set:
            continue
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        pos = [j for j, v in enumerate(vals) if v > 0]
        neg = [j for j, v in enumerate(vals) if v < 0]
        if not neg:
            bit = 1 << i
            masks = [m | bit if v == 0 else m for m, v in zip(masks, vals)]
            continue
        pairs = _kernels.adjacent_pairs(masks, pos, neg, k - 2)
        bit = 1 << i
        new_rays, new_masks = [], []
        for j, v in enumerate(vals):
            if v > 0:
                new_rays.append(rays[j])
                new_masks.append(masks[j])
            elif v == 0:
                new_rays.append(rays[j])
                new_masks.append(masks[j] | bit)
        for p, q in pairs:
            vp, vq = vals[p], vals[q]
            r = [vp * y - vq * x for x, y in zip(rays[p], rays[q])]
            g = 0
            for x in r:
                g = gcd(g, x)
            new_rays.append(tuple(x // g for x in r))
            new_masks.append((masks[p] & masks[q]) | bit)
        rays, masks = new_rays, new_masks
    return rays


def _facets(G):
    """Facet normals and span equations of the cone generated by integer rows ``G``.

    Returns ``(facets, equations)``: primitive integer normals lying in the
    linear span of ``G``, and an integer basis of the orthogonal complement
    of that span.
    """
    n = len(G[0])
    H, _ = linalg.hermite_normal_form(G)
    B = [row for row in H if any(row)]
    k = len(B)
    equations = linalg.integer_left_kernel(linalg.transpose(G))
    if k == 0:
        return [], equations
    A = [[sum(x * y for x, y in zip(g, b)) for b in B] for g in G]
    T = _extreme_rays(A, k)
    facets = [linalg.primitive_integer([sum(t[j] * B[j][c] for j in range(k))
                                        for c in range(n)]) for t in T]
    return facets, equations


def _canonical_span(rows, n):
    """Canonical basis (primitive integer RREF rows) of a rational row space."""
    if not rows:
        return ()
    R, _ = linalg.rref(rows)
    return tuple(sorted(tuple(Fraction(x) for x in linalg.primitive_integer(r)) for r in R))


def _dedupe_sorted(vectors):
    return tuple(sorted(set(vectors)))


# ---------------------------------------------------------------------------
# cones
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone with both descriptions.

    ``rays`` are primitive in ``lattice_M``; ``facets`` are inward normals
    primitive in ``lattice_N``, the dual lattice. For pointed,
    full-dimensional cones ``lineality`` and ``equations`` are empty.
    """

    lattice_M: Lattice
    rays: tuple
    facets: tuple
    lineality: tuple = ()
    equations: tuple = ()
    lattice_N: Lattice = field(default=None, compare=False)

    def __post_init__(self):
        if self.lattice_N is None:
            object.__setattr__(self, "lattice_N", self.lattice_M.dual())

    @property
    def ambient_dim(self) -> int:
        return self.lattice_M.ambient_dim

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    def contains(self, v) -> bool:
        v = linalg.vec(v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError("vector and cone dimensions differ")
        return (all(linalg.dot(v, f) >= 0 for f in self.facets)
                and all(linalg.dot(v, e) == 0 for e in self.equations))

    def __str__(self):
        rays = ", ".join("(" + ", ".join(str(x) for x in r) + ")" for r in self.rays)
        return f"Cone<{rays}>"


def cone_from_rays(M: Lattice, gens) -> Cone:
    """The cone spanned by ``gens`` in the space of ``M``."""
    gens = [linalg.vec(g) for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    n = M.ambient_dim
    for g in gens:
        if len(g) != n:
            raise DimensionMismatchError(f"generator of length {len(g)} in dimension {n}")
        if not any(g):
            raise ZeroVectorError("zero generator")
    G = [linalg.primitive_integer(g) for g in gens]
    F, E = _facets(G)
    D = F + E + [tuple(-x for x in e) for e in E]
    if D:
        R, L = _facets(D)
    else:
        R, L = [], linalg.identity(n)
    N = M.dual()
    return Cone(
        lattice_M=M,
        rays=_dedupe_sorted(M.primitive(r) for r in R),
        facets=_dedupe_sorted(N.primitive(f) for f in F),
        lineality=_canonical_span(L, n),
        equations=_canonical_span(E, n),
        lattice_N=N,
    )


def dual_cone(c: Cone) -> Cone:
    """The dual cone, recomputed from the facet description of ``c``."""
    gens = list(c.facets) + list(c.equations) + [tuple(-x for x in e) for e in c.equations]
    if not gens:
        # dual of the whole space is the origin
        n = c.ambient_dim
        return Cone(c.lattice_N, (), (), (), _canonical_span(linalg.identity(n), n),
                    c.lattice_M)
    return cone_from_rays(c.lattice_N, gens)


def is_pointed(c: Cone) -> bool:
    return c.is_pointed


def cone_contains(c: Cone, v) -> bool:
    return c.contains(v)


# ---------------------------------------------------------------------------
# polytopes
# ---------------------------------------------------------------------------

def _hull(points):
    """Vertices, facet inequalities and affine equations of ``conv(points)``.

    Inequalities are ``(c, u)`` meaning ``c + <u, x> >= 0``; equations
    ``(c, u)`` mean ``c + <u, x> = 0``. Both are primitive integer.
    """
    pts = _dedupe_sorted(linalg.vec(p) for p in points)
    n = len(pts[0])
    G = [linalg.primitive_integer((Fraction(1),) + p) for p in pts]
    F, E = _facets(G)
    target = n  # rank of tight constraints at a vertex of the homogenised cone
    verts = []
    for p, g in zip(pts, G):
        tight = [f for f in F if sum(x * y for x, y in zip(f, g)) == 0]
        if linalg.rank(tight + E) == target:
            verts.append(p)
    ineqs = tuple(sorted((Fraction(f[0]), tuple(Fraction(x) for x in f[1:])) for f in F))
    eqs = tuple(sorted((Fraction(e[0]), tuple(Fraction(x) for x in e[1:]))
                       for e in (tuple(int(x) for x in linalg.primitive_integer(r))
                                 for r in linalg.rref(E)[0]))) if E else ()
    return tuple(verts), ineqs, eqs


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of finitely many lattice points.

    Any point list is accepted; redundant points are dropped on
    construction, so ``vertices`` is always the irredundant, sorted vertex
    list.
    """

    lattice: Lattice
    vertices: tuple
    inequalities: tuple = field(default=(), init=False, repr=False, compare=False)
    equations: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = [linalg.vec(v) for v in self.vertices]
        if not pts:
            raise ValueError("a polytope needs at least one point")
        n = self.lattice.ambient_dim
        for p in pts:
            if len(p) != n:
                raise DimensionMismatchError(f"point of length {len(p)} in dimension {n}")
            if not self.lattice.contains(p):
                raise NotInLatticeError(f"{p} is not a lattice point")
        if n == 0:
            verts, ineqs, eqs = ((),), (), ()
        else:
            verts, ineqs, eqs = _hull(pts)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "inequalities", ineqs)
        object.__setattr__(self, "equations", eqs)

    @property
    def ambient_dim(self) -> int:
        return self.lattice.ambient_dim

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    def contains(self, x) -> bool:
        x = linalg.vec(x)
        return (all(c + linalg.dot(u, x) >= 0 for c, u in self.inequalities)
                and all(c + linalg.dot(u, x) == 0 for c, u in self.equations))

    def strictly_interior(self, x) -> bool:
        """Relative interior membership."""
        x = linalg.vec(x)
        return (all(c + linalg.dot(u, x) > 0 for c, u in self.inequalities)
                and all(c + linalg.dot(u, x) == 0 for c, u in self.equations))

    def translate(self, v) -> LatticePolytope:
        v = linalg.vec(v)
        return LatticePolytope(self.lattice, [linalg.add(p, v) for p in self.vertices])

    def dilate(self, k: int) -> LatticePolytope:
        return LatticePolytope(self.lattice, [linalg.scale(k, p) for p in self.vertices])

    def __str__(self):
        verts = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"Conv{{{verts}}}"


def polytope_from_points(L: Lattice, pts) -> LatticePolytope:
    return LatticePolytope(L, tuple(pts))


class AffineChart:
    """Integer coordinates on the affine lattice spanned by a point set.

    ``points`` are lattice points of ``lattice``; the chart identifies
    ``aff(points) ∩ lattice`` with ``Z^k``, sending the first point to 0.
    """

    def __init__(self, lattice: Lattice, points):
        self.lattice = lattice
        coords = [lattice.integer_coordinates(p) for p in points]
        n = lattice.ambient_dim
        self.base = coords[0]
        diffs = [[a - b for a, b in zip(c, self.base)] for c in coords[1:]]
        diffs = [d for d in diffs if any(d)]
        if not diffs:
            K = []
        else:
            Y = linalg.nullspace(diffs)
            if not Y:
                K = linalg.identity(n)
            else:
                K = linalg.integer_left_kernel([list(col) for col in zip(*Y)])
                H, _ = linalg.hermite_normal_form(K)
                K = [row for row in H if any(row)]
        self.K = K
        self.dim = len(K)
        self._pivots = [next(j for j, x in enumerate(row) if x) for row in K]
        sub = [[row[j] for j in self._pivots] for row in K]
        self._sub_inv = linalg.inverse(sub) if K else []

    def to_chart(self, x) -> tuple:
        c = self.lattice.integer_coordinates(x)
        d = [a - b for a, b in zip(c, self.base)]
        k = self.dim
        s = [sum((Fraction(d[self._pivots[i]]) * self._sub_inv[i][j] for i in range(k)),
                 Fraction(0)) for j in range(k)]
        back = [sum(s[i] * self.K[i][j] for i in range(k)) for j in range(len(d))]
        if back != d or any(x.denominator != 1 for x in s):
            raise NotInLatticeError("point is not on the charted affine lattice")
        return tuple(int(x) for x in s)

    def from_chart(self, s) -> tuple:
        n = len(self.base)
        c = [self.base[j] + sum(s[i] * self.K[i][j] for i in range(self.dim))
             for j in range(n)]
        return self.lattice.point(c)

    def inequality(self, const, normal):
        """Pull back ``const + <normal, x> >= 0`` to integer chart form ``a @ s >= b``."""
        Bu = [linalg.dot(brow, normal) for brow in self.lattice.basis]
        a = [sum((krow[j] * Bu[j] for j in range(len(Bu))), Fraction(0)) for krow in self.K]
        c0 = const + sum((self.base[j] * Bu[j] for j in range(len(Bu))), Fraction(0))
        d = linalg.denominator_lcm(a + [c0])
        return [int(x * d) for x in a], int(-c0 * d)


def chart_polytope(P: LatticePolytope):
    """``(chart, Q)``: the chart of ``aff(P)`` and ``P`` as a full-dimensional polytope in ``Z^k``."""
    chart = AffineChart(P.lattice, P.vertices)
    Q = LatticePolytope(Lattice.standard(chart.dim), [chart.to_chart(v) for v in P.vertices])
    return chart, Q


def lattice_points(P: LatticePolytope) -> list[tuple]:
    """All lattice points of ``P``, sorted lexicographically."""
    if P.ambient_dim == 0:
        return [()]
    chart = AffineChart(P.lattice, P.vertices)
    k = chart.dim
    cv = [chart.to_chart(v) for v in P.vertices]
    if k == 0:
        return [P.vertices[0]]
    lo = [min(v[j] for v in cv) for j in range(k)]
    hi = [max(v[j] for v in cv) for j in range(k)]
    A, b = [], []
    for c, u in P.inequalities:
        row, rhs = chart.inequality(c, u)
        if any(row):
            A.append(row)
            b.append(rhs)
    pts = _kernels.box_points(A, b, lo, hi)
    return sorted(chart.from_chart(s) for s in pts)


def interior_lattice_points(P: LatticePolytope) -> list[tuple]:
    return [p for p in lattice_points(P) if P.strictly_interior(p)]


def minkowski_sum(*polys: LatticePolytope) -> LatticePolytope:
    """Minkowski sum of polytopes over a common lattice."""
    if not polys:
        raise ValueError("need at least one polytope")
    L = polys[0].lattice
    for P in polys[1:]:
        if P.lattice != L:
            raise DimensionMismatchError("polytopes live in different lattices")
    pts = list(polys[0].vertices)
    for P in polys[1:]:
        # prune to the hull after each step to keep the product small
        pts = list(LatticePolytope(L, {linalg.add(a, b) for a in pts
                                       for b in P.vertices}).vertices)
    return LatticePolytope(L, pts)


def polar_vertices(P: LatticePolytope) -> list[tuple]:
    """Vertices of ``{y : <x, y> >= -1 for x in P}`` (rational in general)."""
    if not P.is_full_dimensional:
        raise NotFullDimensionalError("polar dual needs a full-dimensional polytope")
    if any(c <= 0 for c, _ in P.inequalities):
        raise OriginNotInteriorError("origin is not in the interior")
    return sorted(linalg.scale(1 / c, u) for c, u in P.inequalities)


def polar_dual(P: LatticePolytope) -> LatticePolytope:
    """Polar dual as a polytope over the dual lattice.

    Raises :class:`NotLatticePolytopeError` when the polar has a vertex
    outside the dual lattice.
    """
    N = P.lattice.dual()
    verts = polar_vertices(P)
    for v in verts:
        if not N.contains(v):
            raise NotLatticePolytopeError(f"polar vertex {v} is not a lattice point")
    return LatticePolytope(N, verts)


def polytope_product(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    """``P x Q`` over the direct sum of the two lattices."""
    L = Lattice.direct_sum(P.lattice, Q.lattice)
    return LatticePolytope(L, [tuple(p) + tuple(q) for p in P.vertices for q in Q.vertices])


def standard_simplex(m: int, scale: int = 1) -> LatticePolytope:
    """``scale * conv(0, e_1, ..., e_m)`` in ``Z^m``."""
    verts = [(0,) * m] + [tuple(scale * int(i == j) for j in range(m)) for i in range(m)]
    return LatticePolytope(Lattice.standard(m), verts)
