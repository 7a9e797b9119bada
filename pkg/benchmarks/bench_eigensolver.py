#!/usr/bin/env python3
"""Benchmark the numba eigensolver kernels against the pure-numpy fallback.

The numpy path runs the same Sturm pivot recursion vectorized across all
bisection targets at once; the numba path compiles the scalar loops.  Both
produce bitwise-identical spectra (verified at the end), so the only
question is speed.

Usage:
    python benchmarks/bench_eigensolver.py [--sizes 100 400 1600] [--repeats 5]

To run the whole package on the fallback path instead, set
JACOBILT_NO_NUMBA=1 before importing jacobilt.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from jacobilt import _kernels


def random_problem(rng: np.random.Generator, m: int):
    diag = np.ascontiguousarray(rng.uniform(-2.0, 2.0, m))
    off = rng.uniform(0.5, 1.5, m - 1)
    off2 = np.ascontiguousarray(off * off)
    radius = np.zeros(m)
    radius[:-1] += off
    radius[1:] += off
    lo = float(np.min(diag - radius))
    hi = float(np.max(diag + radius))
    return diag, off2, lo, hi


def time_backend(fn, diag, off2, lo, hi, repeats: int, tol: float = 1e-12):
    m = len(diag)
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(diag, off2, 0, m, lo, hi, tol)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[100, 400, 1600])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if not _kernels._HAVE_NUMBA:
        print("numba backend unavailable (JACOBILT_NO_NUMBA set or import failed);")
        print("only the numpy path can be timed here.")

    rng = np.random.default_rng(0)
    print(f"{'m':>6} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>9}  agreement")
    all_equal = True
    for m in args.sizes:
        diag, off2, lo, hi = random_problem(rng, m)
        t_np, ev_np = time_backend(_kernels._bisect_eigenvalues_np,
                                   diag, off2, lo, hi, args.repeats)
        if _kernels._HAVE_NUMBA:
            _kernels._bisect_eigenvalues_nb(diag, off2, 0, m, lo, hi, 1e-12)  # warm JIT
            t_nb, ev_nb = time_backend(_kernels._bisect_eigenvalues_nb,
                                       diag, off2, lo, hi, args.repeats)
            equal = bool(np.array_equal(ev_np, ev_nb))
            all_equal &= equal
            print(f"{m:>6} {t_np * 1e3:>12.2f} {t_nb * 1e3:>12.2f} "
                  f"{t_np / t_nb:>8.1f}x  {'bitwise' if equal else 'DIFFER'}")
        else:
            print(f"{m:>6} {t_np * 1e3:>12.2f} {'-':>12} {'-':>9}")
    if _kernels._HAVE_NUMBA and not all_equal:
        print("ERROR: backends disagreed")
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
