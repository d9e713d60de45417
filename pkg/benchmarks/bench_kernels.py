"""Compare the compiled and pure-Python mod-p kernels on a full
enumeration workload: every 2-plane of F_3^6 (11011 of them) is
Plücker-embedded and tested for invariance.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import itertools
import time

from invgrass._kernels import _pyimpl
from invgrass.paramspace import _rref_shapes

try:
    from invgrass._kernels import _cimpl
except ImportError:
    _cimpl = None

P, N, M = 3, 6, 2


def workload(impl, shapes, gens, subsets):
    invariant = 0
    pluckers = []
    for rows, piv in shapes:
        pluckers.append(impl.plucker_mod(rows, subsets, P))
        if impl.is_invariant_mod(rows, piv, gens, P):
            invariant += 1
    impl.rref_mod(pluckers, len(subsets), P)
    return invariant


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    shapes = list(_rref_shapes(N, M, P))
    blk = [[0, 2], [1, 0]]  # companion of x^2 + 1 over F_3
    gen = [[0] * N for _ in range(N)]
    for b in range(N // 2):
        for i in range(2):
            for j in range(2):
                gen[2 * b + i][2 * b + j] = blk[i][j]
    subsets = list(itertools.combinations(range(N), M))
    backends = [("python", _pyimpl)] + ([("cython", _cimpl)] if _cimpl else [])
    results = {}
    for name, impl in backends:
        best = float("inf")
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            count = workload(impl, shapes, [gen], subsets)
            best = min(best, time.perf_counter() - t0)
        results[name] = (best, count)
        print(f"{name:7s} {best * 1000:9.1f} ms  ({len(shapes)} planes, {count} invariant)")
    if len(results) == 2:
        assert results["python"][1] == results["cython"][1]
        print(f"speedup {results['python'][0] / results['cython'][0]:.1f}x")
    else:
        print("compiled kernels not built; only the pure-Python backend was timed")


if __name__ == "__main__":
    main()
