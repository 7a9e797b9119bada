"""Numerical verification and sharpness probing of discrete Lieb-Thirring
bounds for Jacobi matrices and discrete Schrodinger operators."""

__version__ = "0.1.0"

from .errors import DomainError, RankDeficiencyError, StabilizationError, UsageError
from .extremal import SearchConfig, SearchResult, maximize_ratio, ratio_objective
from .lattice import (
    CompactPerturbation,
    LatticeVector,
    apply_d,
    apply_d_adjoint,
    apply_jacobi,
    apply_laplacian,
    delta,
    inner,
    norm,
)
from .lemmalab import (
    OrthonormalSystem,
    check_agmon,
    check_al_lifting,
    check_dgsi,
    check_jensen,
    check_sandwich,
    check_unitary_equivalence,
    orthonormalize,
    sandwich_2x2_gaps,
)
from .ltcheck import (
    VARIANTS,
    SpectralReport,
    bound_states,
    check,
    fuzz_theorems,
    rhs_functional,
    riesz_gamma,
    riesz_hs1,
)
from .operators import (
    TruncationSpec,
    flip_offdiag_signs,
    jacobi_matrix,
    sandwich_potentials,
    schrodinger_matrix,
)
from .specfun import LTConstants, beta_fn, constants_for, log_gamma, lt_classical
from .trieig import SymTridiag, all_eigenvalues, eigenvalues_outside, sturm_count

__all__ = [
    "__version__",
    "DomainError", "RankDeficiencyError", "StabilizationError", "UsageError",
    "SearchConfig", "SearchResult", "maximize_ratio", "ratio_objective",
    "CompactPerturbation", "LatticeVector", "apply_d", "apply_d_adjoint",
    "apply_jacobi", "apply_laplacian", "delta", "inner", "norm",
    "OrthonormalSystem", "check_agmon", "check_al_lifting", "check_dgsi",
    "check_jensen", "check_sandwich", "check_unitary_equivalence",
    "orthonormalize", "sandwich_2x2_gaps",
    "VARIANTS", "SpectralReport", "bound_states", "check", "fuzz_theorems",
    "rhs_functional", "riesz_gamma", "riesz_hs1",
    "TruncationSpec", "flip_offdiag_signs", "jacobi_matrix",
    "sandwich_potentials", "schrodinger_matrix",
    "LTConstants", "beta_fn", "constants_for", "log_gamma", "lt_classical",
    "SymTridiag", "all_eigenvalues", "eigenvalues_outside", "sturm_count",
]
