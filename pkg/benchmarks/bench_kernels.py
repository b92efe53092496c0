"""Compiled kernels against the NumPy fallback.

Run with ``python3 benchmarks/bench_kernels.py``; prints median wall times.
"""
import argparse
import statistics
import timeit

import numpy as np

from spintorsion import _kernels_py

try:
    from spintorsion import _kernels
except ImportError:
    _kernels = None


def _matmul_args(rng, n):
    return tuple(np.ascontiguousarray(rng.integers(-9, 10, (n, n))) for _ in range(4))


def _chain_args(rng, n, length):
    rows = np.stack([rng.permutation(n) for _ in range(length)]).astype(np.int64)
    phases = rng.integers(0, 4, (length, n)).astype(np.int64)
    return np.ascontiguousarray(rows), np.ascontiguousarray(phases)


def bench(fn, args, repeat):
    times = timeit.repeat(lambda: fn(*args), number=1, repeat=repeat)
    return statistics.median(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=7)
    opts = ap.parse_args()
    rng = np.random.default_rng(0)
    cases = []
    for n in (16, 32, 64):
        cases.append((f"gauss_matmul n={n}", "gauss_matmul", _matmul_args(rng, n)))
    for n, length in ((32, 11), (64, 11), (256, 6)):
        cases.append((f"monomial_chain n={n} len={length}", "monomial_chain", _chain_args(rng, n, length)))
    print(f"{'case':34s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for label, name, args in cases:
        py = bench(getattr(_kernels_py, name), args, opts.repeat)
        if _kernels is None:
            print(f"{label:34s} {py * 1e3:12.3f} {'n/a':>12s}")
            continue
        cy = bench(getattr(_kernels, name), args, opts.repeat)
        print(f"{label:34s} {py * 1e3:12.3f} {cy * 1e3:12.3f} {py / cy:8.1f}x")


if __name__ == "__main__":
    main()
