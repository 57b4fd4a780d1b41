"""Gorenstein and reflexive Gorenstein cones.

A pointed full-dimensional cone is Gorenstein when one dual lattice vector
takes the value 1 on every primitive ray generator; it is reflexive when its
dual cone is Gorenstein too, and the pairing of the two certificates is the
index.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cone import (
    Cone,
    LatticePolytope,
    chart_polytope,
    cone_from_rays,
    dual_cone,
    lattice_points,
    polar_vertices,
)
from .errors import (
    InvalidLatticeError,
    NotFullDimensionalError,
    NotGorensteinError,
    NotInLatticeError,
    NotPointedError,
)
from .lattice import Lattice, lattice_from_congruence


class Status(enum.Enum):
    GORENSTEIN = "gorenstein"
    INFEASIBLE = "infeasible"
    NOT_INTEGRAL = "not integral"


@dataclass(frozen=True)
class GorensteinData:
    n_sigma: tuple
    support: LatticePolytope


@dataclass(frozen=True)
class ReflexiveData:
    gorenstein: GorensteinData
    dual_gorenstein: GorensteinData
    index: int

    @property
    def n_sigma(self) -> tuple:
        return self.gorenstein.n_sigma

    @property
    def m_sigma_check(self) -> tuple:
        return self.dual_gorenstein.n_sigma


def _require_pointed_full(c: Cone):
    if not c.is_pointed:
        raise NotPointedError("cone contains a line")
    if not c.is_full_dimensional:
        raise NotFullDimensionalError(f"cone has dimension {c.dim} < {c.ambient_dim}")


def gorenstein_status(c: Cone) -> tuple[Status, tuple | None]:
    """Solve ``<e, n> = 1`` over all rays and classify the result.

    Returns ``(status, n)``; ``n`` is the rational solution whenever the
    system is consistent, even if it is not a lattice point.
    """
    _require_pointed_full(c)
    rays = list(c.rays)
    n = linalg.solve(rays, [Fraction(1)] * len(rays))
    if n is None:
        return Status.INFEASIBLE, None
    # full dimension makes the rays span, so the solution is unique
    assert linalg.rank(rays) == c.ambient_dim
    if not c.lattice_N.contains(n):
        return Status.NOT_INTEGRAL, n
    return Status.GORENSTEIN, n


def gorenstein_point(c: Cone) -> tuple | None:
    status, n = gorenstein_status(c)
    return n if status is Status.GORENSTEIN else None


def is_gorenstein(c: Cone) -> bool:
    return gorenstein_point(c) is not None


def _require_gorenstein(c: Cone) -> tuple:
    status, n = gorenstein_status(c)
    if status is not Status.GORENSTEIN:
        raise NotGorensteinError(f"cone is not Gorenstein ({status.value})")
    return n


def support_polytope(c: Cone) -> LatticePolytope:
    """Degree-one slice of a Gorenstein cone; its vertices are the rays."""
    _require_gorenstein(c)
    return LatticePolytope(c.lattice_M, c.rays)


def gorenstein_data(c: Cone) -> GorensteinData:
    n = _require_gorenstein(c)
    return GorensteinData(n, LatticePolytope(c.lattice_M, c.rays))


def reflexive_data(c: Cone) -> ReflexiveData | None:
    """Certificates and index when both ``c`` and its dual are Gorenstein."""
    n = gorenstein_point(c)
    if n is None:
        return None
    dc = dual_cone(c)
    m = gorenstein_point(dc)
    if m is None:
        return None
    index = linalg.dot(m, n)
    assert index.denominator == 1 and index >= 1
    return ReflexiveData(
        GorensteinData(n, LatticePolytope(c.lattice_M, c.rays)),
        GorensteinData(m, LatticePolytope(dc.lattice_M, dc.rays)),
        int(index),
    )


def is_reflexive(c: Cone) -> bool:
    return reflexive_data(c) is not None


def degree(c: Cone, m) -> int:
    """``<m, n_sigma>`` for a lattice point ``m`` of the cone."""
    n = _require_gorenstein(c)
    m = linalg.vec(m)
    if not c.lattice_M.contains(m):
        raise NotInLatticeError("point is not in the lattice")
    if not c.contains(m):
        raise ValueError("point is outside the cone")
    d = linalg.dot(m, n)
    return int(d)


def graded_point_count(c: Cone, k: int) -> int:
    """Number of lattice points of the cone in degree ``k``."""
    _require_gorenstein(c)
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if k == 0:
        return 1
    return len(lattice_points(LatticePolytope(c.lattice_M, c.rays).dilate(k)))


def index_rescaled_lattices(c: Cone, r: int) -> tuple[Lattice, Lattice]:
    """The pair ``M' = {x : <x, n_sigma> = 0 mod r}`` and ``N' = N + Z n_sigma / r``.

    The two are checked to be dual to each other.
    """
    if r < 1:
        raise ValueError("r must be positive")
    n = _require_gorenstein(c)
    M, N = c.lattice_M, c.lattice_N
    weights = [linalg.dot(b, n) for b in M.basis]
    assert all(w.denominator == 1 for w in weights)
    K = lattice_from_congruence(M.ambient_dim, [int(w) for w in weights], r)
    M_prime = Lattice.from_generators([M.point(row) for row in K.basis], M.ambient_dim)
    N_prime = N.with_generators(linalg.scale(Fraction(1, r), n))
    if M_prime.dual() != N_prime:
        raise InvalidLatticeError("rescaled lattices are not dual")  # library bug
    return M_prime, N_prime


def is_reflexive_polytope(P: LatticePolytope) -> bool:
    """Reflexivity of a full-dimensional lattice polytope, up to lattice translation.

    Looks for the lattice point ``p`` at lattice distance one from every
    facet; ``P`` is reflexive iff it exists and the polar dual of ``P - p``
    has all its vertices in the dual lattice.
    """
    if not P.is_full_dimensional:
        raise NotFullDimensionalError("reflexivity needs a full-dimensional polytope")
    L, N = P.lattice, P.lattice.dual()
    rows, rhs = [], []
    for _, u in P.inequalities:
        u = N.primitive(u)
        height = min(linalg.dot(u, v) for v in P.vertices)
        rows.append(u)
        rhs.append(height + 1)
    p = linalg.solve(rows, rhs)
    if p is None or not L.contains(p):
        return False
    shifted = P.translate(linalg.scale(-1, p))
    return all(N.contains(y) for y in polar_vertices(shifted))


def is_reflexive_polytope_via_cone(P: LatticePolytope) -> bool:
    """The same test through the cone over ``{1} x P``: reflexive of index one."""
    if not P.is_full_dimensional:
        raise NotFullDimensionalError("reflexivity needs a full-dimensional polytope")
    M = Lattice.direct_sum(Lattice.standard(1), P.lattice)
    c = cone_from_rays(M, [(1,) + tuple(v) for v in P.vertices])
    data = reflexive_data(c)
    return data is not None and data.index == 1


def reflexive_index_equivalence(c: Cone, r: int) -> bool:
    """Check that "reflexive of index r" agrees with "r times the support is reflexive".

    The left side comes from the dual cone certificates; the right side from
    the polar dual of ``r * support`` charted in the rescaled lattice ``M'``.
    A ``False`` return means the two code paths disagree.
    """
    data = reflexive_data(c)
    left = data is not None and data.index == r
    M_prime, _ = index_rescaled_lattices(c, r)
    scaled = LatticePolytope(M_prime, [linalg.scale(r, e) for e in c.rays])
    _, Q = chart_polytope(scaled)
    right = is_reflexive_polytope(Q)
    return left == right
