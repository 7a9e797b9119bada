"""Self-contained eigensolver for real symmetric tridiagonal matrices.

Eigenvalues are located by Sturm-count bisection: the pivot-sign count is
exact (up to floating arithmetic) at every shift, so eigenvalue counts on
either side of an interval are guaranteed correct and each eigenvalue is
bracketed to an absolute tolerance with no convergence tuning.  This is
slower than shifted-QL but every spectral claim downstream leans on the
count guarantees, in particular "no eigenvalues outside [-2, 2]" calls.

Off-diagonal entries may carry any sign; flipping the sign of any single
entry is a similarity transform (conjugation by a diagonal +-1 matrix)
and leaves the spectrum unchanged, which several checks exploit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import bisect_eigenvalues, sturm_count_kernel
from .errors import UsageError


@dataclass
class SymTridiag:
    """A real symmetric tridiagonal matrix: diagonal plus one off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        self.diag = np.ascontiguousarray(self.diag, dtype=float)
        self.offdiag = np.ascontiguousarray(self.offdiag, dtype=float)
        if self.diag.ndim != 1 or self.offdiag.ndim != 1:
            raise UsageError("diag and offdiag must be one-dimensional")
        if len(self.diag) < 1:
            raise UsageError("matrix must have at least one row")
        if len(self.offdiag) != len(self.diag) - 1:
            raise UsageError(
                f"offdiag length must be {len(self.diag) - 1}, got {len(self.offdiag)}"
            )

    @property
    def n(self) -> int:
        return len(self.diag)

    def gershgorin(self) -> tuple[float, float]:
        """An interval certain to contain every eigenvalue."""
        radius = np.zeros(self.n)
        if self.n > 1:
            radius[:-1] += np.abs(self.offdiag)
            radius[1:] += np.abs(self.offdiag)
        return float(np.min(self.diag - radius)), float(np.max(self.diag + radius))

    def to_dense(self) -> np.ndarray:
        dense = np.diag(self.diag)
        if self.n > 1:
            idx = np.arange(self.n - 1)
            dense[idx, idx + 1] = self.offdiag
            dense[idx + 1, idx] = self.offdiag
        return dense


def _off2(T: SymTridiag) -> np.ndarray:
    return np.ascontiguousarray(T.offdiag * T.offdiag)


def sturm_count(T: SymTridiag, x: float) -> int:
    """Number of eigenvalues of T strictly less than x."""
    return int(sturm_count_kernel(T.diag, _off2(T), float(x)))


def all_eigenvalues(T: SymTridiag, tol: float = 1e-12) -> np.ndarray:
    """All n eigenvalues in ascending order, each within absolute tol."""
    if not tol > 0.0:
        raise UsageError("tol must be positive")
    lo, hi = T.gershgorin()
    return bisect_eigenvalues(T.diag, _off2(T), 0, T.n, lo, hi, float(tol))


def eigenvalues_outside(T: SymTridiag, lo: float, hi: float,
                        tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues in (-inf, lo) and (hi, inf), ascending, each within tol.

    The list lengths are read off Sturm counts at the interval ends, so
    they are exact; only the eigenvalue positions carry the bisection
    tolerance.
    """
    if lo > hi:
        raise UsageError(f"nonsensical interval: lo={lo} > hi={hi}")
    if not tol > 0.0:
        raise UsageError("tol must be positive")
    off2 = _off2(T)
    g_lo, g_hi = T.gershgorin()
    n_below = int(sturm_count_kernel(T.diag, off2, float(lo)))
    # strictly-above count: eigenvalues at exactly hi are not "outside"
    n_at_or_below_hi = int(sturm_count_kernel(T.diag, off2, np.nextafter(float(hi), np.inf)))
    n_above = T.n - n_at_or_below_hi
    below = bisect_eigenvalues(T.diag, off2, 0, n_below,
                               min(g_lo, float(lo)), float(lo), float(tol))
    above = bisect_eigenvalues(T.diag, off2, T.n - n_above, T.n,
                               float(hi), max(g_hi, float(hi)), float(tol))
    return below, above
