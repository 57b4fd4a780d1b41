"""Named constructions: the rigid Calabi-Yau cone family and a fixture registry.

The rigid family lives in ``Z^(3d)``. On the ``M`` side the lattice is
``Z^(3d) + Z(1/3, ..., 1/3)``; its dual is the cubic lattice
``{x : x_1 + ... + x_(3d) = 0 mod 3}``. Both cones are positive orthants.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb

from . import linalg
from .cayley import (
    CayleyInput,
    cayley_cone,
    cayley_reflexivity_consistent,
    find_splittings,
    orthant,
    schimmrigk_cayley,
    segment_obstruction_scan,
    weighted_projective_cone,
)
from .cone import Cone, LatticePolytope, dual_cone
from .errors import GconeError, NotSublatticeError
from .gorenstein import (
    graded_point_count,
    is_reflexive_polytope,
    reflexive_data,
    reflexive_index_equivalence,
)
from .lattice import (
    Lattice,
    interior_lattice_points_of_segment,
    lattice_from_congruence,
    sublattice_index,
)
from .nefpart import (
    check_pairing,
    dual_nef_partition,
    make_nef_partition,
    nef_cayley_cones,
    verify_cone_duality,
)

THIRD = Fraction(1, 3)


@dataclass(frozen=True)
class RigidCYExample:
    d: int
    sigma_M: Cone
    sigma_N: Cone

    @property
    def lattice_M(self) -> Lattice:
        return self.sigma_M.lattice_M

    @property
    def lattice_N(self) -> Lattice:
        return self.sigma_N.lattice_M


def rigid_M_lattice(d: int) -> Lattice:
    n = 3 * d
    return Lattice.standard(n).with_generators((THIRD,) * n)


def product_M_lattice(d: int) -> Lattice:
    """``M^d``: the d-fold sum of ``Z^3 + Z(1/3, 1/3, 1/3)``."""
    return Lattice.direct_sum(*[rigid_M_lattice(1)] * d)


def rigid_cy_pair(d: int) -> RigidCYExample:
    """The orthant pair of the rigid family, with every certificate checked."""
    if d < 1:
        raise ValueError("d must be positive")
    n = 3 * d
    M = rigid_M_lattice(d)
    N = lattice_from_congruence(n, [1] * n, 3)
    if M.dual() != N:
        raise GconeError("rigid lattices are not dual")  # library bug
    sigma_M, sigma_N = orthant(M), orthant(N)
    if dual_cone(sigma_M) != sigma_N:
        raise GconeError("orthants are not dual")
    data = reflexive_data(sigma_M)
    if data is None:
        raise GconeError("rigid cone is not reflexive")
    if data.n_sigma != (1,) * n or data.m_sigma_check != (THIRD,) * n:
        raise GconeError("unexpected Gorenstein certificates")
    if sublattice_index(M, product_M_lattice(d)) != 3 ** (d - 1):
        raise GconeError("M-bar has the wrong index in M^d")
    return RigidCYExample(d, sigma_M, sigma_N)


@dataclass(frozen=True)
class HodgeIdentity:
    lhs: int
    rhs1: int
    rhs2: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs1 == self.rhs2


def hodge_identity(d: int) -> HodgeIdentity:
    """Square-free cubic monomials against two counts of exceptional divisors."""
    if d < 1:
        raise ValueError("d must be positive")
    return HodgeIdentity(
        comb(3 * d, 3),
        d * (3 * d - 1) * (3 * d - 2) // 2,
        d + 18 * comb(d, 2) + 27 * comb(d, 3),
    )


def intermediate_lattice_pair(base: RigidCYExample, generators) -> tuple[Cone, Cone]:
    """Orthants over ``M' = M-bar + sum Z g`` and over its dual.

    Every generator must lie in ``M^d``; the two cones are checked to be
    reflexive and dual to each other.
    """
    Md = product_M_lattice(base.d)
    gens = [linalg.vec(g) for g in generators]
    for g in gens:
        if not Md.contains(g):
            raise NotSublatticeError(f"generator {g} is not in M^d")
    M_prime = base.lattice_M.with_generators(*gens) if gens else base.lattice_M
    sigma, sigma_dual = orthant(M_prime), orthant(M_prime.dual())
    if dual_cone(sigma) != sigma_dual:
        raise GconeError("intermediate orthants are not dual")
    if reflexive_data(sigma) is None or reflexive_data(sigma_dual) is None:
        raise GconeError("intermediate cone is not reflexive")
    return sigma, sigma_dual


@dataclass(frozen=True)
class Overlattice:
    lattice: Lattice
    generator: tuple
    index: int
    cyclic_invariant: bool


def _block_unit(d: int, i: int) -> tuple:
    return tuple(THIRD if 3 * i <= j < 3 * i + 3 else Fraction(0) for j in range(3 * d))


def _rotate_blocks(v, d: int) -> tuple:
    return tuple(v[3 * ((j // 3 - 1) % d) + j % 3] for j in range(3 * d))


def prime_overlattices(d: int, p: int = 3) -> list[Overlattice]:
    """Overlattices of ``M-bar`` inside ``M^d`` of prime index ``p``.

    ``M^d / M-bar`` is generated by the block vectors ``u_i`` (a third on
    block ``i``). Each candidate is labelled by whether cyclically rotating
    the blocks maps it to itself.
    """
    total = 3 ** (d - 1)
    if total % p:
        return []
    base = rigid_M_lattice(d)
    units = [_block_unit(d, i) for i in range(d)]
    found: dict[Lattice, tuple] = {}
    for coeffs in product(range(3), repeat=d):
        g = tuple(sum((c * u[j] for c, u in zip(coeffs, units)), Fraction(0))
                  for j in range(3 * d))
        if base.contains(g):
            continue
        L = base.with_generators(g)
        if sublattice_index(base, L) != p:
            continue
        found.setdefault(L, g)
    out = []
    for L, g in found.items():
        invariant = all(L.contains(_rotate_blocks(b, d)) for b in L.basis)
        out.append(Overlattice(L, g, p, invariant))
    return sorted(out, key=lambda o: (not o.cyclic_invariant, o.generator))


# ---------------------------------------------------------------------------
# fixture registry
# ---------------------------------------------------------------------------

def _square():
    Z2 = Lattice.standard(2)
    return {"delta": [(1, 1), (1, -1), (-1, 1), (-1, -1)],
            "rays": [(1, 0), (-1, 0), (0, 1), (0, -1)],
            "partition": [(0, 1), (2, 3)], "lattice": Z2}


def _p2_triangle():
    return {"delta": [(2, -1), (-1, 2), (-1, -1)],
            "rays": [(1, 0), (0, 1), (-1, -1)],
            "partition": [(0,), (1, 2)], "lattice": Lattice.standard(2)}


def _triangle_r1():
    return {"delta": [(1, 0), (0, 1), (-1, -1)],
            "rays": None,
            "partition": [(0, 1, 2)], "lattice": Lattice.standard(2)}


NEF_FIXTURES = {"nef-p1xp1": _square, "nef-p2-1-2": _p2_triangle, "nef-triangle-r1": _triangle_r1}


def nef_fixture(name: str):
    data = NEF_FIXTURES[name]()
    delta = LatticePolytope(data["lattice"], data["delta"])
    return make_nef_partition(delta, data["partition"], data["rays"])


def _shift_first(points, by=(1, 0)):
    pts = [tuple(p) for p in points]
    pts[0] = tuple(a + b for a, b in zip(pts[0], by))
    return pts


def _check_nef(data):
    delta = LatticePolytope(data["lattice"], data["delta"])
    np_ = make_nef_partition(delta, data["partition"], data["rays"])
    dual = dual_nef_partition(np_)
    ok = {
        "pairing": check_pairing(np_, dual),
        "cone duality": verify_cone_duality(np_),
        "involution": dual_nef_partition(dual) == np_,
    }
    sigma, _ = nef_cayley_cones(np_)
    rd = reflexive_data(sigma)
    ok["index = r"] = rd is not None and rd.index == np_.r
    bad = [k for k, v in ok.items() if not v]
    return not bad, "failed: " + ", ".join(bad) if bad else f"r={np_.r}, all checks hold"


def _check_nef_roundtrip(data):
    delta = LatticePolytope(data["lattice"], data["delta"])
    np_ = make_nef_partition(delta, data["partition"], data["rays"])
    sigma, _ = nef_cayley_cones(np_)
    r = np_.r
    expected = {frozenset(tuple(int(j == i) for j in range(r)) + v for v in P.vertices)
                for i, P in enumerate(np_.part_polytopes)}
    recovered = [{frozenset(sigma.rays[a] for a in part) for part in s.parts}
                 for s in find_splittings(sigma, r)]
    ok = expected in recovered
    return ok, f"{len(recovered)} splitting(s); constructing partition {'found' if ok else 'missing'}"


def _check_corrupted_pairing(data):
    # shift nabla_1 by (1, 0): the pairing inequalities must then fail
    delta = LatticePolytope(data["lattice"], data["delta"])
    np_ = make_nef_partition(delta, data["partition"], data["rays"])
    dual = dual_nef_partition(np_)
    parts = list(dual.part_polytopes)
    parts[0] = parts[0].translate(data["shift"])
    corrupted = type(dual)(dual.delta, dual.rays, dual.partition, tuple(parts))
    ok = not check_pairing(np_, corrupted)
    return ok, "corrupted pairing rejected" if ok else "corrupted pairing accepted"


def _check_wp(data):
    c, r = weighted_projective_cone(data["weights"], data["w0"])
    rd = reflexive_data(c)
    ok = r == data["r"] and rd is not None and rd.index == data["r"]
    return ok, f"index {rd.index if rd else None}, expected {data['r']}"


def _check_index_equivalence(data):
    c, _ = weighted_projective_cone(data["weights"], data["w0"])
    idx = reflexive_data(c).index
    rs = sorted({1, idx, idx + 1})
    bad = [r for r in rs if not reflexive_index_equivalence(c, r)]
    return not bad, f"r in {rs} " + ("agree" if not bad else f"disagree at {bad}")


def _check_cayley(data):
    L = Lattice.standard(len(data["polytopes"][0][0]))
    inp = CayleyInput(L, tuple(LatticePolytope(L, P) for P in data["polytopes"]))
    rd = reflexive_data(cayley_cone(inp))
    ok = rd is not None and rd.index == data["index"] and cayley_reflexivity_consistent(inp)
    return ok, f"index {rd.index if rd else None}, expected {data['index']}"


def _check_schimmrigk(data):
    c = schimmrigk_cayley(data["k"], data["l"])
    return True, f"index 2, {len(c.rays)} rays, degree-1 count {graded_point_count(c, 1)}"


def _check_not_split(data):
    c = orthant(lattice_from_congruence(data["dbar"], [1] * data["dbar"], data["k"]))
    rd = reflexive_data(c)
    pairs_ok = all(len(interior_lattice_points_of_segment(c.lattice_M, a, b)) == data["k"] - 1
                   for i, a in enumerate(c.rays) for b in c.rays[i + 1:])
    ok = (rd is not None and rd.index == data["r"] and not segment_obstruction_scan(c)
          and not find_splittings(c, data["r"]) and pairs_ok)
    return ok, "no splitting, no primitive segment" if ok else "unexpected splitting data"


def _check_rigid(data):
    ex = rigid_cy_pair(data["d"])
    rd = reflexive_data(ex.sigma_M)
    ok = rd.index == data["index"]
    return ok, f"index {rd.index}, expected {data['index']}"


def _check_rigid_d1(data):
    ex = rigid_cy_pair(1)
    L = Lattice.standard(2)
    tri = LatticePolytope(L, data["triangle"])
    c = cayley_cone(CayleyInput(L, (tri,)))
    if len(c.rays) != 3 or not is_reflexive_polytope(tri):
        return False, "the triangle does not give a reflexive simplicial cone"
    # the linear map e_i -> i-th ray must carry M-bar onto the lattice of the triangle cone
    A = [list(r) for r in c.rays]
    image = Lattice.from_generators(linalg.matmul([list(b) for b in ex.lattice_M.basis], A), 3)
    ok = image == c.lattice_M
    return ok, "isomorphic to the cone over the triangle" if ok else "lattices differ"


def _check_hodge(data):
    h = hodge_identity(data["d"])
    return h.equal, f"{h.lhs} = {h.rhs1} = {h.rhs2}"


def _check_intermediate(data):
    ex = rigid_cy_pair(data["d"])
    sigma, _ = intermediate_lattice_pair(ex, [data["generator"]])
    idx = sublattice_index(ex.lattice_M, sigma.lattice_M)
    ok = idx == 3
    return ok, f"index {idx} over M-bar, reflexive dual pair"


def _check_cubic_not_split(data):
    ex = rigid_cy_pair(data["d"])
    ok = not find_splittings(ex.sigma_N, data["r"])
    return ok, "dual cone not split" if ok else "dual cone split"


def _check_product_split(data):
    d = data["d"]
    c = orthant(product_M_lattice(d))
    ok = bool(find_splittings(c, d))
    return ok, "product cone splits" if ok else "product cone does not split"


@dataclass(frozen=True)
class Fixture:
    name: str
    group: str
    data: object
    check: object
    mutate: object


def _nef_data(fn, **extra):
    data = fn()
    data.update(extra)
    return data


def _mut_delta(data):
    return {**data, "delta": _shift_first(data["delta"])}


def _registry() -> dict[str, Fixture]:
    fx = []

    def add(name, group, data, check, mutate):
        fx.append(Fixture(name, group, data, check, mutate))

    wp = [("wp-quintic", (1,) * 5, 5, 1), ("wp-sextic-r2", (1,) * 6, 3, 2),
          ("wp-quartic-r2", (1,) * 4, 2, 2), ("wp-1-1-2-2-2", (1, 1, 2, 2, 2), 8, 1)]
    for name, w, w0, r in wp:
        data = {"weights": w, "w0": w0, "r": r}
        add(name, "weighted", data, _check_wp, lambda d: {**d, "r": d["r"] + 1})
        add(name.replace("wp-", "index-equivalence-"), "weighted", data,
            _check_index_equivalence, lambda d: {**d, "w0": d["w0"] + 1})

    add("cayley-segments", "cayley",
        {"polytopes": [[(-1, 0), (1, 0)], [(0, -1), (0, 1)]], "index": 2},
        _check_cayley, lambda d: {**d, "polytopes": [[(-1, 0), (2, 0)], d["polytopes"][1]]})
    add("cayley-p2-1-2", "cayley",
        {"polytopes": [[(-1, 0), (0, 0), (-1, 1)], [(0, -1), (2, -1), (0, 1)]], "index": 2},
        _check_cayley, lambda d: {**d, "polytopes": [_shift_first(d["polytopes"][0], (-1, 0)),
                                                     d["polytopes"][1]]})
    for k, l in [(1, 1), (1, 2), (2, 2)]:
        add(f"schimmrigk-{k}-{l}", "cayley", {"k": k, "l": l}, _check_schimmrigk,
            lambda d: {**d, "k": 0})
    add("not-split-k2-r2", "cayley", {"dbar": 4, "k": 2, "r": 2}, _check_not_split,
        lambda d: {**d, "dbar": 2})

    for name, fn in NEF_FIXTURES.items():
        add(name, "nefpart", _nef_data(fn), _check_nef, _mut_delta)
        add(name + "-roundtrip", "nefpart", _nef_data(fn), _check_nef_roundtrip, _mut_delta)
    add("nef-corrupted-pairing", "nefpart", _nef_data(_p2_triangle, shift=(1, 0)),
        _check_corrupted_pairing, lambda d: {**d, "shift": (0, 0)})

    for d in (1, 2, 3):
        add(f"rigid-cy-d{d}", "rigid-cy", {"d": d, "index": d}, _check_rigid,
            lambda x: {**x, "index": x["index"] + 1})
    add("rigid-cy-d1-triangle", "rigid-cy", {"triangle": [(1, 0), (0, 1), (-1, -1)]},
        _check_rigid_d1, lambda x: {"triangle": [(2, 0), (0, 1), (-1, -1)]})
    for d in range(1, 11):
        add(f"hodge-identity-d{d:02d}", "rigid-cy", {"d": d}, _check_hodge,
            lambda x: {"d": 0})
    g = tuple([THIRD] * 3 + [-THIRD] * 3 + [Fraction(0)] * 3)
    add("rigid-cy-intermediate-d3", "rigid-cy", {"d": 3, "generator": g}, _check_intermediate,
        lambda x: {**x, "generator": tuple([Fraction(1, 9)] + list(x["generator"][1:]))})
    add("rigid-cy-dual-not-split-d2", "rigid-cy", {"d": 2, "r": 2}, _check_cubic_not_split,
        lambda x: {**x, "d": 0})
    add("rigid-cy-product-split-d2", "rigid-cy", {"d": 2}, _check_product_split,
        lambda x: {"d": 0})
    return {f.name: f for f in fx}


FIXTURES = _registry()
GROUPS = sorted({f.group for f in FIXTURES.values()})


def select_fixtures(filter: str | None = None) -> list[str]:
    """Fixture names in a group, or whose name contains ``filter``."""
    names = sorted(FIXTURES)
    if not filter:
        return names
    return [n for n in names if FIXTURES[n].group == filter or filter in n]


def run_fixture(name: str, mutated: bool = False) -> dict:
    f = FIXTURES[name]
    data = f.mutate(f.data) if mutated else f.data
    try:
        ok, detail = f.check(data)
    except Exception as exc:  # a crashing check is a failed check
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return {"fixture": name, "status": "pass" if ok else "fail", "detail": detail}


def _run_pair(args):
    return run_fixture(*args)


def verify_paper(filter: str | None = None, mutate=(), jobs: int = 1) -> list[dict]:
    """Run the selected fixtures; ``mutate`` names fixtures to corrupt first.

    The report is sorted by fixture name whatever the number of workers.
    """
    mutate = {mutate} if isinstance(mutate, str) else set(mutate or ())
    unknown = mutate - set(FIXTURES)
    if unknown:
        raise KeyError(f"unknown fixture(s): {', '.join(sorted(unknown))}")
    names = select_fixtures(filter)
    work = [(n, n in mutate) for n in names]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            report = list(pool.map(_run_pair, work))
    else:
        report = [run_fixture(*w) for w in work]
    return sorted(report, key=lambda e: e["fixture"])
