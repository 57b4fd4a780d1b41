"""Exact integer and rational linear algebra.

Matrices are plain lists of rows. Integer routines take ``int`` entries,
rational routines accept anything ``Fraction`` accepts. Nothing here ever
touches floating point.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from math import gcd

Vector = tuple  # tuple[Fraction, ...]


def vec(entries) -> tuple:
    """Coerce a sequence to a tuple of Fractions."""
    return tuple(Fraction(x) for x in entries)


def dot(u, v):
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} != {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def denominator_lcm(entries) -> int:
    d = 1
    for x in entries:
        d = lcm(d, Fraction(x).denominator)
    return d


def primitive_integer(v) -> tuple:
    """Scale a nonzero rational vector by a positive factor to a primitive integer vector."""
    d = denominator_lcm(v)
    ints = [int(Fraction(x) * d) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive multiple")
    return tuple(x // g for x in ints)


def hermite_normal_form(m: Sequence[Sequence[int]]):
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``H = U @ m``, ``U`` unimodular and ``H`` in row
    echelon form: pivots positive, entries above a pivot reduced into
    ``[0, pivot)``, zero rows at the bottom. The form is unique for the row
    lattice of ``m``.
    """
    H = [[int(x) for x in row] for row in m]
    rows = len(H)
    cols = len(H[0]) if rows else 0
    U = identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        found = False
        while True:
            nz = [i for i in range(r, rows) if H[i][c] != 0]
            if not nz:
                break
            found = True
            p = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[p] = H[p], H[r]
            U[r], U[p] = U[p], U[r]
            clean = True
            for i in range(r + 1, rows):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c]:
                        clean = False
            if clean:
                break
        if not found:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U


def hnf_rank(H) -> int:
    return sum(1 for row in H if any(row))


def integer_left_kernel(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis (as rows) of ``{x in Z^rows : x @ m = 0}``."""
    if not m:
        return []
    H, U = hermite_normal_form(m)
    k = hnf_rank(H)
    return [U[i] for i in range(k, len(H))]


def rref(rows):
    """Reduced row echelon form over Q. Returns ``(R, pivot_columns)``."""
    R = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    if not R:
        return R, pivots
    ncols = len(R[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1]) if rows else 0


def solve(a, b) -> tuple | None:
    """Solve ``a @ x = b`` exactly.

    Returns one solution (free variables set to 0) or ``None`` when the
    system is inconsistent.
    """
    n = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return tuple(x)


def nullspace(a) -> list[tuple]:
    """Rational basis of ``{x : a @ x = 0}``, normalised to primitive integer rows."""
    if not a:
        return []
    n = len(a[0])
    R, piv = rref(a)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, c in zip(R, piv):
            x[c] = -row[f]
        basis.append(primitive_integer(x))
    return basis


def inverse(m):
    """Inverse of a square rational matrix, or ``None`` if singular."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        return None
    return [row[n:] for row in R]


def determinant(m) -> Fraction:
    """Determinant by fraction-valued elimination."""
    n = len(m)
    A = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return det
