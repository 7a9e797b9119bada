"""Finite truncations of the lattice operators and the coupling reduction.

The infinite operators live on all of Z; every spectral computation here
restricts them to a finite window with hard (Dirichlet) cutoff, which
keeps matrices symmetric tridiagonal and -- crucially -- pollutes only the
essential-spectrum band, never creating spurious eigenvalues outside it.
Bound states decay exponentially, so eigenvalues outside the band
converge geometrically as the `margin` of free sites grows; the adaptive
loop in `ltcheck` doubles the margin until they settle.

Also here: the reduction that trades general couplings a_n for modified
diagonals,

    b_n^{+-} = b_n +- (|a_{n-1} - 1| + |a_n - 1|),

which sandwiches W between two free-coupling operators,
W(1, b^-) <= W(a, b) <= W(1, b^+), and the sign flip of the off-diagonal
that realizes the unitary equivalence of -D*D + b and D*D - 4 + b at
matrix level.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .lattice import CompactPerturbation
from .trieig import SymTridiag


@dataclass(frozen=True)
class TruncationSpec:
    """How to cut the infinite operator down to a finite matrix.

    margin: free sites appended on each side of the perturbation window.
    growth_factor: margin multiplier per adaptive refinement step.
    stability_tol: maximum eigenvalue movement accepted between refinements.
    """

    margin: int = 32
    growth_factor: int = 2
    stability_tol: float = 1e-12

    def __post_init__(self):
        if self.margin < 1:
            raise UsageError(f"margin must be >= 1, got {self.margin}")
        if self.growth_factor < 2:
            raise UsageError(f"growth_factor must be >= 2, got {self.growth_factor}")
        if not self.stability_tol > 0.0:
            raise UsageError("stability_tol must be positive")


DEFAULT_TRUNCATION = TruncationSpec()


def jacobi_matrix_on_window(pert: CompactPerturbation, first: int, last: int) -> SymTridiag:
    """Dirichlet truncation of W onto sites first..last inclusive."""
    if last < first:
        raise UsageError("empty truncation window")
    m = last - first + 1
    diag = np.zeros(m)
    offdiag = np.ones(m - 1)
    lo = max(first, pert.offset)
    hi = min(last + 1, pert.end)
    if lo < hi:
        diag[lo - first : hi - first] = pert.b[lo - pert.offset : hi - pert.offset]
        hi_a = min(last, pert.end)  # coupling at site `last` leaves the window
        if lo < hi_a:
            offdiag[lo - first : hi_a - first] = pert.a[lo - pert.offset : hi_a - pert.offset]
    return SymTridiag(diag, offdiag)


def jacobi_window(pert: CompactPerturbation, margin: int) -> tuple[int, int]:
    return pert.offset - margin, pert.end - 1 + margin


def jacobi_matrix(pert: CompactPerturbation, spec: TruncationSpec = DEFAULT_TRUNCATION,
                  margin: int | None = None) -> SymTridiag:
    """Truncation of W with `margin` free sites beyond the stored window."""
    first, last = jacobi_window(pert, spec.margin if margin is None else margin)
    return jacobi_matrix_on_window(pert, first, last)


def schrodinger_matrix(b, offset: int = 0, sign: int = +1,
                       spec: TruncationSpec = DEFAULT_TRUNCATION,
                       margin: int | None = None) -> SymTridiag:
    """Truncation of the discrete Schrodinger operator for potential window b.

    sign +1 builds D*D - b (diag 2 - b_n, offdiag -1); sign -1 builds
    -D*D + b, its entrywise negation (diag b_n - 2, offdiag +1).
    """
    if sign not in (+1, -1):
        raise UsageError(f"sign must be +1 or -1, got {sign}")
    b = np.asarray(b, dtype=float)
    mar = spec.margin if margin is None else margin
    m = len(b) + 2 * mar
    diag = np.zeros(m)
    diag[mar : mar + len(b)] = b
    if sign == +1:
        return SymTridiag(2.0 - diag, np.full(m - 1, -1.0))
    return SymTridiag(diag - 2.0, np.full(m - 1, 1.0))


def sandwich_potentials(pert: CompactPerturbation) -> tuple[CompactPerturbation, CompactPerturbation]:
    """The free-coupling perturbations (b^-, b^+) that bracket W.

    Each perturbed coupling a_n feeds |a_n - 1| into the diagonals at
    sites n and n+1, so the output window is one site wider than the
    input on the right.
    """
    width = len(pert) + 1
    dev = np.zeros(width)  # dev[i] = |a_{offset+i-1} - 1| + |a_{offset+i} - 1|
    adev = np.abs(pert.a - 1.0)
    dev[:-1] += adev
    dev[1:] += adev
    b_ext = np.zeros(width)
    b_ext[: len(pert)] = pert.b
    return (
        CompactPerturbation(pert.offset, b_ext - dev),
        CompactPerturbation(pert.offset, b_ext + dev),
    )


def flip_offdiag_signs(T: SymTridiag) -> SymTridiag:
    """Same diagonal, negated off-diagonal: a similarity, so same spectrum."""
    return SymTridiag(T.diag.copy(), -T.offdiag)
