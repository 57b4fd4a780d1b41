"""Compare the compiled kernels with the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from gcone import _kernels as K
from gcone.catalog import rigid_cy_pair
from gcone.cone import LatticePolytope, dual_cone, lattice_points
from gcone.lattice import Lattice


def box_problem():
    # a dilated 4-simplex: x_i >= 0, sum x_i <= 30
    k = 4
    A = [[int(i == j) for j in range(k)] for i in range(k)] + [[-1] * k]
    b = [0] * k + [-30]
    return A, b, [0] * k, [30] * k


def adjacency_problem(seed=0, rays=160, bits=120):
    rng = random.Random(seed)
    masks = [rng.getrandbits(bits) | rng.getrandbits(bits) for _ in range(rays)]
    pos, neg = list(range(0, rays, 2)), list(range(1, rays, 2))
    return masks, pos, neg, bits // 3


def workloads():
    box = box_problem()
    adj = adjacency_problem()
    sigma = rigid_cy_pair(3).sigma_M
    simplex = LatticePolytope(Lattice.standard(4), [(0, 0, 0, 0), (12, 0, 0, 0), (0, 12, 0, 0),
                                                    (0, 0, 12, 0), (0, 0, 0, 12)])
    return {
        "box_points (4-simplex, 30)": lambda: K.box_points(*box),
        "adjacent_pairs (160 rays, 120 bits)": lambda: K.adjacent_pairs(*adj),
        "dual_cone (dim-9 orthant)": lambda: dual_cone(sigma),
        "lattice_points (12-dilated 4-simplex)": lambda: lattice_points(simplex),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = K.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'workload':40} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for name, fn in workloads().items():
        times = {}
        results = {}
        for b in backends:
            with K.use_backend(b):
                results[b] = fn()
                times[b] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        assert len({repr(r) for r in results.values()}) == 1, f"backends disagree on {name}"
        row = " ".join(f"{times[b] * 1e3:8.1f}ms" for b in backends)
        speed = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else ""
        print(f"{name:40} {row} {speed}")


if __name__ == "__main__":
    main()
