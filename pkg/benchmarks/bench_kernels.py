"""Compare the numba kernels with their numpy/Python fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

Times the chained submatrix product (symmetry check) and the exhaustive
path walk (brute-force oracle) on a few RadiX-Nets.  Each kernel is warmed
up once so numba compilation is excluded.
"""
import argparse
import time

import numpy as np

from radixnet import RadixNetSpec, _kernels, build_radixnet
from radixnet.analysis import _global_csr

MATMUL_CASES = {
    "(8,8,8) x3, widths 1": RadixNetSpec.uniform([(8, 8, 8)] * 3),
    "(4,4,4,4), widths 2": RadixNetSpec.uniform([(4, 4, 4, 4)], width=2),
    "(6,6,6), widths 3": RadixNetSpec.uniform([(6, 6, 6)], width=3),
}
WALK_CASES = {
    "(2,2,2,2) x3, widths 1": RadixNetSpec.uniform([(2, 2, 2, 2)] * 3),
    "(3,4) x2, widths 2": RadixNetSpec.uniform([(3, 4), (3, 4)], width=2),
}


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def chain(kernel, mats):
    def run():
        a = mats[0]
        indptr, indices, data = a.indptr, a.col, a.data
        for b in mats[1:]:
            indptr, indices, data, status = kernel(
                indptr, indices, data, b.indptr, b.col, b.data, b.n_cols)
            assert status == 0
        return data
    return run


def walk(kernel, topo):
    indptr, indices, offsets = _global_csr(topo)
    allowed = np.ones(int(offsets[-1]), dtype=bool)

    def run():
        total = 0
        for u in range(topo.layer_sizes[0]):
            _, n, status = kernel(indptr, indices, u, topo.depth, offsets[-2],
                                  topo.layer_sizes[-1], allowed, 10**9)
            assert status == 0
            total += n
        return total
    return run


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    print(f"{'kernel':<8} {'case':<28} {'numba [s]':>10} {'numpy [s]':>10} {'speedup':>8}")
    for name, spec in MATMUL_CASES.items():
        mats = build_radixnet(spec).submatrices
        fast = best_of(chain(_kernels.matmul_csr_numba, mats), args.repeat)
        slow = best_of(chain(_kernels.matmul_csr_numpy, mats), args.repeat)
        print(f"{'matmul':<8} {name:<28} {fast:>10.4f} {slow:>10.4f} {slow / fast:>7.1f}x")
    for name, spec in WALK_CASES.items():
        topo = build_radixnet(spec)
        fast = best_of(walk(_kernels.enumerate_paths_numba, topo), args.repeat)
        slow = best_of(walk(_kernels.enumerate_paths_python, topo), 1)
        print(f"{'paths':<8} {name:<28} {fast:>10.4f} {slow:>10.4f} {slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()
