"""Hot numeric kernels: Sturm pivot counts and index-targeted bisection.

Two interchangeable backends produce bitwise-identical results:

  * a numba @njit backend (default when numba imports cleanly), scalar
    loops compiled per eigenvalue index;
  * a pure-numpy backend that runs the same pivot recursion vectorized
    across all shift points at once.

Set the environment variable ``JACOBILT_NO_NUMBA=1`` before import to
force the numpy path; `benchmarks/bench_eigensolver.py` times one
against the other.

The pivot recursion is the LDL^T factorization of T - x I:

    d_0 = diag[0] - x,   d_i = (diag[i] - x) - offdiag[i-1]^2 / d_{i-1}

and the number of negative pivots equals the number of eigenvalues of T
strictly below x (Sylvester inertia).  Zero pivots are replaced by a
signed tiny value; IEEE semantics keep the recursion self-correcting
through the resulting infinities.
"""

from __future__ import annotations

import os

import numpy as np

_TINY = 1e-300


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


# ---------------------------------------------------------------------------
# pure-python/numpy reference backend
# ---------------------------------------------------------------------------

def _sturm_count_py(diag, off2, x):
    """Number of eigenvalues strictly below x (scalar reference path)."""
    count = 0
    d = diag[0] - x
    if d == 0.0:
        d = _TINY
    if d < 0.0:
        count += 1
    for i in range(1, diag.shape[0]):
        d = (diag[i] - x) - off2[i - 1] / d
        if d == 0.0:
            d = _TINY
        if d < 0.0:
            count += 1
    return count


def _sturm_counts_batch_np(diag, off2, xs):
    """Sturm counts for a whole array of shifts; recursion vectorized over xs."""
    d = diag[0] - xs
    d[d == 0.0] = _TINY
    counts = (d < 0.0).astype(np.int64)
    for i in range(1, diag.shape[0]):
        d = (diag[i] - xs) - off2[i - 1] / d
        d[d == 0.0] = _TINY
        counts += d < 0.0
    return counts


def _bisect_eigenvalues_np(diag, off2, j_first, j_last, lo0, hi0, tol):
    """Eigenvalues with ascending index j in [j_first, j_last), batched bisection.

    Requires count(lo0) <= j_first and count(hi0) >= j_last whenever the
    bracket is nonempty; each index converges independently and freezes,
    which keeps the midpoint sequence identical to the scalar backend.
    """
    n = j_last - j_first
    js = np.arange(j_first, j_last, dtype=np.int64)
    lo = np.full(n, lo0)
    hi = np.full(n, hi0)
    while True:
        mid = 0.5 * (lo + hi)
        active = (hi - lo > tol) & (mid > lo) & (mid < hi)
        if not active.any():
            break
        counts = _sturm_counts_batch_np(diag, off2, mid[active])
        go_up = counts <= js[active]
        lo[active] = np.where(go_up, mid[active], lo[active])
        hi[active] = np.where(go_up, hi[active], mid[active])
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# numba backend (same arithmetic, scalar loops)
# ---------------------------------------------------------------------------

_HAVE_NUMBA = False
if not _env_flag("JACOBILT_NO_NUMBA"):
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:
        _HAVE_NUMBA = False

if _HAVE_NUMBA:
    _sturm_count_nb = njit("int64(float64[::1], float64[::1], float64)", cache=True)(
        _sturm_count_py
    )

    @njit("float64[::1](float64[::1], float64[::1], int64, int64, float64, float64, float64)",
          cache=True)
    def _bisect_eigenvalues_nb(diag, off2, j_first, j_last, lo0, hi0, tol):
        out = np.empty(j_last - j_first, dtype=np.float64)
        for k in range(j_last - j_first):
            j = j_first + k
            lo = lo0
            hi = hi0
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if mid <= lo or mid >= hi:
                    break
                if _sturm_count_nb(diag, off2, mid) <= j:
                    lo = mid
                else:
                    hi = mid
            out[k] = 0.5 * (lo + hi)
        return out

    @njit("int64[::1](float64[::1], float64[::1], float64[::1])", cache=True)
    def _sturm_counts_batch_nb(diag, off2, xs):
        out = np.empty(xs.shape[0], dtype=np.int64)
        for k in range(xs.shape[0]):
            out[k] = _sturm_count_nb(diag, off2, xs[k])
        return out


# ---------------------------------------------------------------------------
# public dispatch
# ---------------------------------------------------------------------------

def backend_name() -> str:
    return "numba" if _HAVE_NUMBA else "numpy"


def sturm_count_kernel(diag: np.ndarray, off2: np.ndarray, x: float) -> int:
    if _HAVE_NUMBA:
        return int(_sturm_count_nb(diag, off2, x))
    return _sturm_count_py(diag, off2, x)


def sturm_counts_batch(diag: np.ndarray, off2: np.ndarray, xs: np.ndarray) -> np.ndarray:
    if _HAVE_NUMBA:
        return _sturm_counts_batch_nb(diag, off2, xs)
    return _sturm_counts_batch_np(diag, off2, np.array(xs, dtype=float))


def bisect_eigenvalues(diag: np.ndarray, off2: np.ndarray, j_first: int, j_last: int,
                       lo0: float, hi0: float, tol: float) -> np.ndarray:
    """Ascending eigenvalues number j_first..j_last-1, each bisected to tol."""
    if j_last <= j_first:
        return np.zeros(0)
    if _HAVE_NUMBA:
        return _bisect_eigenvalues_nb(diag, off2, j_first, j_last, lo0, hi0, tol)
    return _bisect_eigenvalues_np(diag, off2, j_first, j_last, lo0, hi0, tol)
