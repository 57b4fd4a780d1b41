"""Shared fixtures, brute-force oracles and hypothesis strategies."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import strategies as st

from gcone import linalg
from gcone.cone import LatticePolytope, cone_from_rays
from gcone.lattice import Lattice, lattice_from_congruence


def F(*xs):
    return tuple(Fraction(x) for x in xs)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def in_cone_oracle(gens, v) -> bool:
    """Caratheodory: ``v`` is in the cone iff it is a nonnegative combination
    of some linearly independent subset of the generators."""
    v = linalg.vec(v)
    if not any(v):
        return True
    n = len(v)
    for k in range(1, min(n, len(gens)) + 1):
        for sub in combinations(gens, k):
            if linalg.rank(sub) < k:
                continue
            lam = linalg.solve(linalg.transpose(sub), v)
            if lam is not None and all(x >= 0 for x in lam):
                return True
    return False


def box_scan(P: LatticePolytope, pad: int = 0) -> list[tuple]:
    """Every lattice point of ``P`` by scanning lattice coordinates over a
    generous box, testing membership with the hull inequalities."""
    L = P.lattice
    coords = [L.coordinates(v) for v in P.vertices]
    lo = [int(min(c[i] for c in coords)) - 1 - pad for i in range(L.ambient_dim)]
    hi = [int(max(c[i] for c in coords)) + 1 + pad for i in range(L.ambient_dim)]
    out = []
    for t in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        x = L.point(t)
        if P.contains(x):
            out.append(x)
    return sorted(out)


def multiples_scan(L: Lattice, direction, limit: int = 60):
    """Smallest positive rational multiple ``t * direction`` in ``L``, scanning
    ``t = a/b`` with small numerators and denominators."""
    best = None
    for b in range(1, limit + 1):
        for a in range(1, limit + 1):
            t = Fraction(a, b)
            if best is not None and t >= best:
                break
            if L.contains(tuple(t * x for x in direction)):
                best = t
                break
    return tuple(best * x for x in direction)


# ---------------------------------------------------------------------------
# random objects
# ---------------------------------------------------------------------------

def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> list[list[int]]:
    U = linalg.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rng.choice([-2, -1, 1, 2])
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    if rng.random() < 0.5:
        U[0] = [-a for a in U[0]]
    return U


def random_lattice(rng: random.Random, n: int) -> Lattice:
    """A unimodular image of a congruence lattice."""
    weights = [rng.randint(0, 3) for _ in range(n)]
    K = lattice_from_congruence(n, weights, rng.randint(1, 4))
    U = random_unimodular(rng, n)
    return Lattice.from_generators(linalg.matmul(U, [list(r) for r in K.basis]), n)


def random_pointed_cone(rng: random.Random, n: int, lattice: Lattice | None = None):
    """A pointed full-dimensional cone: random generators in an open halfspace."""
    L = lattice or Lattice.standard(n)
    while True:
        k = rng.randint(n, n + 3)
        gens = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(k)]
        # force pointedness with a positive first coordinate after shifting
        gens = [[abs(g[0]) + 1] + g[1:] for g in gens]
        if linalg.rank(gens) < n:
            continue
        c = cone_from_rays(L, gens)
        if c.is_pointed and c.is_full_dimensional:
            return c, gens


@st.composite
def small_vectors(draw, n, lo=-5, hi=5):
    return tuple(draw(st.integers(lo, hi)) for _ in range(n))


@st.composite
def full_rank_bases(draw, n):
    rows = draw(st.lists(small_vectors(n, -4, 4), min_size=n, max_size=n))
    d = draw(st.integers(1, 3))
    rows = [tuple(Fraction(x, d) for x in r) for r in rows]
    if linalg.determinant(rows) == 0:
        rows = [tuple(Fraction(int(i == j) * (i + 1), d) for j in range(n)) for i in range(n)]
    return rows


@st.composite
def lattices(draw, min_dim=1, max_dim=4):
    n = draw(st.integers(min_dim, max_dim))
    return Lattice(tuple(draw(full_rank_bases(n))), n)


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_document_object(rng: random.Random):
    """A random valid object of one of the five document kinds."""
    from gcone.nefpart import make_nef_partition

    kind = rng.choice(["lattice", "cone", "polytope", "nef_partition", "report"])
    n = rng.randint(1, 4)
    if kind == "lattice":
        return random_lattice(rng, n)
    if kind == "cone":
        L = random_lattice(rng, n)
        if n == 1 or rng.random() < 0.7:
            return random_pointed_cone(rng, n, L)[0]
        # not full-dimensional, or with a lineality space
        gens = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(1, n + 1))]
        gens = [g for g in gens if any(g)] or [[1] + [0] * (n - 1)]
        return cone_from_rays(L, gens)
    if kind == "polytope":
        L = random_lattice(rng, n)
        pts = [L.point([rng.randint(-3, 3) for _ in range(n)]) for _ in range(rng.randint(1, n + 3))]
        return LatticePolytope(L, pts)
    if kind == "nef_partition":
        Z2 = Lattice.standard(2)
        return rng.choice([
            lambda: make_nef_partition(LatticePolytope(Z2, [(1, 1), (1, -1), (-1, 1), (-1, -1)]),
                                       [(0, 1), (2, 3)], [(1, 0), (-1, 0), (0, 1), (0, -1)]),
            lambda: make_nef_partition(LatticePolytope(Z2, [(2, -1), (-1, 2), (-1, -1)]),
                                       [(0,), (1, 2)], [(1, 0), (0, 1), (-1, -1)]),
            lambda: make_nef_partition(LatticePolytope(Z2, [(1, 0), (0, 1), (-1, -1)]), [(0, 1, 2)]),
        ])()
    return [{"fixture": f"f{i}", "status": rng.choice(["pass", "fail"]), "detail": "x" * rng.randint(0, 5)}
            for i in range(rng.randint(0, 4))]


# ---------------------------------------------------------------------------
# acceptance summary: one PASS/FAIL line per criterion at the end of the run
# ---------------------------------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
