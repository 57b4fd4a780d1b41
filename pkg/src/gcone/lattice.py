"""Full-rank lattices in Q^n.

A :class:`Lattice` is stored by a basis in canonical row Hermite normal form,
so two lattices are equal exactly when their stored bases are equal. The
pairing between a lattice and its dual is the standard dot product on
ambient coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import linalg
from .errors import (
    DimensionMismatchError,
    InvalidLatticeError,
    NotInLatticeError,
    NotSublatticeError,
    ZeroVectorError,
)


def _canonical_basis(generators, n):
    """HNF basis (rational rows) of the lattice generated by ``generators``."""
    gens = [linalg.vec(g) for g in generators]
    for g in gens:
        if len(g) != n:
            raise DimensionMismatchError(f"generator {g} is not in Q^{n}")
    if n == 0:
        return ()
    d = linalg.denominator_lcm(x for g in gens for x in g)
    H, _ = linalg.hermite_normal_form([[int(x * d) for x in g] for g in gens])
    H = [row for row in H if any(row)]
    if len(H) != n:
        raise InvalidLatticeError("singular basis")
    return tuple(tuple(Fraction(x, d) for x in row) for row in H)


@dataclass(frozen=True)
class Lattice:
    """A full-rank lattice in Q^n given by basis rows.

    The constructor accepts any basis (or any full-rank generating set) and
    normalises it to HNF.
    """

    basis: tuple
    ambient_dim: int = field(default=-1, compare=False)
    _inverse: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = [tuple(r) for r in self.basis]
        n = self.ambient_dim if self.ambient_dim >= 0 else (len(rows[0]) if rows else 0)
        if any(len(r) != n for r in rows):
            raise InvalidLatticeError("basis rows have inconsistent length")
        if len(rows) != n:
            raise InvalidLatticeError("basis must be square")
        if n and linalg.determinant(rows) == 0:
            raise InvalidLatticeError("singular basis")
        basis = _canonical_basis(rows, n)
        inv = linalg.inverse(basis) if n else []
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "ambient_dim", n)
        object.__setattr__(self, "_inverse", tuple(tuple(r) for r in inv))

    @classmethod
    def standard(cls, n: int) -> Lattice:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_generators(cls, generators, n: int | None = None) -> Lattice:
        gens = [linalg.vec(g) for g in generators]
        if n is None:
            n = len(gens[0])
        return cls(_canonical_basis(gens, n), n)

    @classmethod
    def direct_sum(cls, *lattices: Lattice) -> Lattice:
        n = sum(L.ambient_dim for L in lattices)
        rows = []
        offset = 0
        for L in lattices:
            for b in L.basis:
                rows.append((Fraction(0),) * offset + b
                            + (Fraction(0),) * (n - offset - L.ambient_dim))
            offset += L.ambient_dim
        return cls(tuple(rows), n)

    @property
    def determinant(self) -> Fraction:
        """Covolume |det B|."""
        if self.ambient_dim == 0:
            return Fraction(1)
        return abs(linalg.determinant(self.basis))

    def _check_dim(self, v):
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError(
                f"vector of length {len(v)} in a rank-{self.ambient_dim} lattice")

    def coordinates(self, v) -> tuple:
        """Rational coordinates ``c`` with ``v = c @ basis``."""
        v = linalg.vec(v)
        self._check_dim(v)
        n = self.ambient_dim
        return tuple(sum((v[i] * self._inverse[i][j] for i in range(n)), Fraction(0))
                     for j in range(n))

    def point(self, coords) -> tuple:
        """Ambient vector with the given lattice coordinates."""
        n = self.ambient_dim
        return tuple(sum((Fraction(coords[i]) * self.basis[i][j] for i in range(n)),
                         Fraction(0)) for j in range(n))

    def integer_coordinates(self, v) -> tuple:
        c = self.coordinates(v)
        if any(x.denominator != 1 for x in c):
            raise NotInLatticeError(f"{_fmt(v)} is not a lattice point")
        return tuple(int(x) for x in c)

    def contains(self, v) -> bool:
        return all(x.denominator == 1 for x in self.coordinates(v))

    def dual(self) -> Lattice:
        """Dual lattice: basis is the inverse transpose."""
        n = self.ambient_dim
        return Lattice(tuple(tuple(self._inverse[i][j] for i in range(n))
                             for j in range(n)), n)

    def primitive(self, direction) -> tuple:
        """Primitive lattice vector on the ray spanned by ``direction``."""
        direction = linalg.vec(direction)
        self._check_dim(direction)
        if not any(direction):
            raise ZeroVectorError("zero vector has no primitive multiple")
        c = linalg.primitive_integer(self.coordinates(direction))
        return self.point(c)

    def with_generators(self, *vectors) -> Lattice:
        return Lattice.from_generators(list(self.basis) + [linalg.vec(v) for v in vectors],
                                       self.ambient_dim)

    def is_sublattice_of(self, other: Lattice) -> bool:
        return all(other.contains(b) for b in self.basis)

    def __str__(self):
        rows = ", ".join("(" + ", ".join(str(x) for x in b) + ")" for b in self.basis)
        return f"Lattice[{rows}]"


def _fmt(v):
    return "(" + ", ".join(str(Fraction(x)) for x in v) + ")"


def dual_lattice(L: Lattice) -> Lattice:
    return L.dual()


def contains(L: Lattice, v) -> bool:
    return L.contains(v)


def primitive(L: Lattice, direction) -> tuple:
    return L.primitive(direction)


def sublattice_index(sub: Lattice, L: Lattice) -> int:
    """Index [L : sub] for ``sub`` contained in ``L``."""
    if sub.ambient_dim != L.ambient_dim:
        raise DimensionMismatchError("lattices live in different spaces")
    if not sub.is_sublattice_of(L):
        raise NotSublatticeError("not a sublattice")
    idx = sub.determinant / L.determinant
    assert idx.denominator == 1
    return int(idx)


def lattice_from_congruence(n: int, weights, modulus: int) -> Lattice:
    """The lattice ``{x in Z^n : sum(w_i x_i) = 0 mod modulus}``."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    weights = [int(w) for w in weights]
    if len(weights) != n:
        raise DimensionMismatchError("need one weight per coordinate")
    if n == 0:
        return Lattice.standard(0)
    # (x, k) with w.x - k*modulus = 0, projected to x; the projection is injective.
    column = [[w] for w in weights] + [[modulus]]
    kernel = linalg.integer_left_kernel(column)
    return Lattice.from_generators([row[:n] for row in kernel], n)


def lattice_with_generator(base: Lattice, v) -> Lattice:
    return base.with_generators(v)


def interior_lattice_points_of_segment(L: Lattice, a, b) -> list[tuple]:
    """Lattice points strictly between ``a`` and ``b``, ordered from ``a``."""
    a, b = linalg.vec(a), linalg.vec(b)
    ca = L.integer_coordinates(a)
    cb = L.integer_coordinates(b)
    diff = [y - x for x, y in zip(ca, cb)]
    g = 0
    for x in diff:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("segment endpoints coincide")
    step = linalg.scale(Fraction(1, g), linalg.sub(b, a))
    return [linalg.add(a, linalg.scale(j, step)) for j in range(1, g)]


def segment_is_primitive(L: Lattice, a, b) -> bool:
    """True iff the segment [a, b] has no interior lattice points."""
    ca = L.integer_coordinates(a)
    cb = L.integer_coordinates(b)
    g = 0
    for x, y in zip(ca, cb):
        g = gcd(g, y - x)
    return g == 1
