#!/usr/bin/env python3
"""Benchmark the Jacobi kernel paths: numba JIT vs pure numpy.

Both implementations run the identical rotation sequence; this script
times them side by side on symmetric matrices of growing size and on a
full Williamson decomposition, and prints the speedup.

Run:  python3 benchmarks/bench_jacobi.py
"""

import math
import time

import numpy as np

from matcanon import _kernels
from matcanon.williamson import williamson

SIZES = (16, 32, 64, 128)
REPEATS = {16: 50, 32: 20, 64: 8, 128: 3}


def _sym(seed, n):
    g = np.random.default_rng(seed).normal(size=(n, n))
    return (g + g.T) / 2.0


def time_impl(fn, a, repeats):
    off_target = 1e-12 * math.sqrt(float(np.sum(a * a)))
    best = math.inf
    for _ in range(repeats):
        work = a.copy()
        vecs = np.eye(a.shape[0])
        start = time.perf_counter()
        sweeps = fn(work, vecs, off_target, 64)
        best = min(best, time.perf_counter() - start)
        assert sweeps >= 0
    return best


def main():
    if _kernels.ACTIVE_IMPL != "numba":
        print("note: numba path unavailable or disabled; timing numpy against itself")
        compiled = _kernels._jacobi_numpy
    else:
        compiled = _kernels._jacobi_compiled
        compiled(np.eye(2), np.eye(2), 1e-12, 4)  # JIT warm-up

    print(f"active kernel path: {_kernels.ACTIVE_IMPL}")
    print(f"{'n':>5} {'numba [ms]':>12} {'numpy [ms]':>12} {'speedup':>9}")
    for n in SIZES:
        a = _sym(n, n)
        t_jit = time_impl(compiled, a, REPEATS[n]) * 1e3
        t_np = time_impl(_kernels._jacobi_numpy, a, REPEATS[n]) * 1e3
        print(f"{n:>5} {t_jit:>12.3f} {t_np:>12.3f} {t_np / t_jit:>8.1f}x")

    # end to end: one Williamson decomposition of a 64x64 SPD matrix
    g = np.random.default_rng(0).normal(size=(64, 64))
    spd = g.T @ g + np.eye(64)
    williamson(spd)  # warm-up
    start = time.perf_counter()
    williamson(spd)
    print(f"\nwilliamson(64x64) on the active path: "
          f"{(time.perf_counter() - start) * 1e3:.2f} ms")


if __name__ == "__main__":
    main()
