"""Every supporting lemma and proof device, as a falsifiable numeric predicate.

Each check_* function returns a margin (or gap / relative error) whose
sign or size the corresponding lemma constrains; the fuzz driver hammers
them with seeded random inputs.  A genuinely negative margin beyond
tolerance would mean a bug in this package, since each predicate is a
proved statement:

  check_agmon        |phi(n)|^2 <= ||phi|| * ||D phi||
  check_dgsi         sum_n rho(n)^3 <= sum_j ||D psi_j||^2 for orthonormal {psi_j}
  check_unitary_equivalence
                     spec(-D*D + b) = spec(D*D - 4 + b), exact at matrix level
  check_al_lifting   mu^gamma = B(gamma-1,2)^{-1} integral_0^inf tau^{gamma-2}(mu-tau)_+ dtau
  check_jensen       (x+y+z)^q <= 3^{q-1} (x^q+y^q+z^q), q >= 1
  check_sandwich     lambda_k(W(1,b^-)) <= lambda_k(W(a,b)) <= lambda_k(W(1,b^+))

The Jensen exponent is q-1, not q: the plain convexity constant, and the
one the composite bound's 3^{gamma-1/2} prefactor actually consumes at
q = gamma + 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RankDeficiencyError, UsageError
from .lattice import CompactPerturbation, LatticeVector, apply_d, inner, norm
from .operators import (
    DEFAULT_TRUNCATION,
    TruncationSpec,
    jacobi_matrix_on_window,
    sandwich_potentials,
    schrodinger_matrix,
)
from .specfun import beta_fn
from .trieig import SymTridiag, all_eigenvalues

ORTHO_DEFECT_LIMIT = 1e-10
_RANK_THRESHOLD = 1e-10


@dataclass
class OrthonormalSystem:
    """A finite orthonormal family of lattice vectors."""

    vectors: list[LatticeVector]
    ortho_defect: float

    def __len__(self) -> int:
        return len(self.vectors)

    def density(self) -> LatticeVector:
        """rho(n) = sum_j psi_j(n)^2."""
        first = min(v.offset for v in self.vectors)
        last = max(v.end for v in self.vectors) - 1
        rho = np.zeros(last - first + 1)
        for v in self.vectors:
            rho += v.on_window(first, last) ** 2
        return LatticeVector(first, rho)


def _gram_defect(vectors: list[LatticeVector]) -> float:
    worst = 0.0
    for i, u in enumerate(vectors):
        for j in range(i, len(vectors)):
            target = 1.0 if i == j else 0.0
            worst = max(worst, abs(inner(u, vectors[j]) - target))
    return worst


def orthonormalize(raw: list[LatticeVector]) -> OrthonormalSystem:
    """Modified Gram-Schmidt with one reorthogonalization pass."""
    if not raw:
        raise UsageError("orthonormalize needs at least one vector")
    first = min(v.offset for v in raw)
    last = max(v.end for v in raw) - 1
    basis: list[np.ndarray] = []
    for index, v in enumerate(raw):
        w = v.on_window(first, last)
        original = np.linalg.norm(w)
        for _ in range(2):  # second pass scrubs the rounding left by the first
            for q in basis:
                w -= np.dot(q, w) * q
        remaining = np.linalg.norm(w)
        if original == 0.0 or remaining <= _RANK_THRESHOLD * original:
            raise RankDeficiencyError(index)
        basis.append(w / remaining)
    vectors = [LatticeVector(first, q) for q in basis]
    system = OrthonormalSystem(vectors, _gram_defect(vectors))
    if system.ortho_defect > ORTHO_DEFECT_LIMIT:
        raise RankDeficiencyError(len(raw) - 1,
                                  f"orthonormalization defect {system.ortho_defect:.2e}")
    return system


def check_agmon(phi: LatticeVector) -> float:
    """||phi|| * ||D phi|| - max_n phi(n)^2; nonnegative for every phi."""
    if len(phi) == 0:
        raise UsageError("check_agmon needs a nonzero vector")
    peak = float(np.max(phi.values ** 2))
    return norm(phi) * norm(apply_d(phi)) - peak


def check_dgsi(system: OrthonormalSystem) -> float:
    """sum_j ||D psi_j||^2 - sum_n rho(n)^3; nonnegative for orthonormal systems."""
    if system.ortho_defect > ORTHO_DEFECT_LIMIT:
        raise UsageError(f"system is not orthonormal enough: defect {system.ortho_defect:.2e}")
    kinetic = sum(norm(apply_d(v)) ** 2 for v in system.vectors)
    rho = system.density()
    return kinetic - float(np.sum(rho.values ** 3))


def check_unitary_equivalence(b, spec: TruncationSpec = DEFAULT_TRUNCATION) -> float:
    """Max spectral gap between -D*D + b and D*D - 4 + b on a common window.

    The two matrices share the diagonal and differ by the sign of the
    off-diagonal, a similarity, so the gap is solver noise only.
    """
    b = np.asarray(b, dtype=float)
    minus = schrodinger_matrix(b, 0, -1, spec)  # -D*D + b
    shifted = SymTridiag(minus.diag.copy(), -minus.offdiag)  # D*D - 4 + b
    ev_minus = all_eigenvalues(minus, tol=1e-13)
    ev_shifted = all_eigenvalues(shifted, tol=1e-13)
    return float(np.max(np.abs(ev_minus - ev_shifted)))


def check_al_lifting(mu: float, gamma: float, quad_points: int = 64) -> float:
    """Relative quadrature error of the Beta-integral lifting identity.

    Gauss-Legendre after tau = mu * s; for fractional powers the extra
    substitution s = u^p with p = m/(gamma-1), m minimal, turns the
    integrand into p * u^{m-1} (1 - u^p), killing the endpoint
    singularity (m = 1 below gamma = 2, m = 2 below gamma = 3; from
    gamma = 3 the plain integrand is already mildly smooth).
    """
    if not mu > 0.0:
        raise DomainError(f"mu must be positive, got {mu}")
    if not gamma > 1.0:
        raise DomainError(f"lifting identity needs gamma > 1, got {gamma}")
    if quad_points < 2:
        raise UsageError("quad_points must be at least 2")
    nodes, weights = np.polynomial.legendre.leggauss(quad_points)
    u = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    mu_gamma = mu ** gamma
    if gamma < 3.0:
        m = 1.0 if gamma < 2.0 else 2.0
        p = m / (gamma - 1.0)
        f = mu_gamma * p * u ** (m - 1.0) * (1.0 - u ** p)
    else:
        tau = mu * u
        f = tau ** (gamma - 2.0) * (mu - tau) * mu
    quad = float(np.sum(w * f))
    lifted = quad / beta_fn(gamma - 1.0, 2.0)
    return abs(lifted - mu_gamma) / mu_gamma


def check_jensen(alpha: float, beta: float, c: float, q: float) -> float:
    """3^{q-1} (alpha^q + beta^q + c^q) - (alpha + beta + c)^q; nonnegative."""
    if q < 1.0:
        raise DomainError(f"convexity needs q >= 1, got {q}")
    if alpha < 0.0 or beta < 0.0 or c < 0.0:
        raise DomainError("jensen arguments must be nonnegative")
    return 3.0 ** (q - 1.0) * (alpha ** q + beta ** q + c ** q) - (alpha + beta + c) ** q


def check_sandwich(pert: CompactPerturbation,
                   spec: TruncationSpec = DEFAULT_TRUNCATION) -> tuple[float, float]:
    """Eigenvalue gaps certifying W(1,b^-) <= W(a,b) <= W(1,b^+).

    Returns (min_k lambda_k(W) - lambda_k(W^-), min_k lambda_k(W^+) - lambda_k(W))
    over the full ascending spectra on a common truncation window; both
    are nonnegative up to solver noise by the min-max principle.
    """
    lower, upper = sandwich_potentials(pert)
    first = min(pert.offset, lower.offset) - spec.margin
    last = max(pert.end, lower.end, upper.end, pert.offset + 1) - 1 + spec.margin
    ev_mid = all_eigenvalues(jacobi_matrix_on_window(pert, first, last), tol=1e-13)
    ev_low = all_eigenvalues(jacobi_matrix_on_window(lower, first, last), tol=1e-13)
    ev_high = all_eigenvalues(jacobi_matrix_on_window(upper, first, last), tol=1e-13)
    return float(np.min(ev_mid - ev_low)), float(np.min(ev_high - ev_mid))


def sandwich_2x2_gaps(a: float) -> tuple[float, float]:
    """Smallest eigenvalues of the 2x2 coupling-bound differences.

    [[-|a-1|, 1], [1, -|a-1|]] <= [[0, a], [a, 0]] <= [[|a-1|, 1], [1, |a-1|]]
    holds for every real a; both difference matrices have eigenvalues
    |a-1| +- (a-1) and |a-1| -+ (a-1), so the minima are exactly zero.
    """
    dev = abs(a - 1.0)
    lower_gap = min(dev + (a - 1.0), dev - (a - 1.0))
    upper_gap = min(dev + (1.0 - a), dev - (1.0 - a))
    return lower_gap, upper_gap


# ---------------------------------------------------------------------------
# seeded fuzz suites
# ---------------------------------------------------------------------------

def random_vector(rng: np.random.Generator, support_max: int = 20,
                  offset_range: tuple[int, int] = (-15, 15)) -> LatticeVector:
    """Standard-normal entries on a random window inside the offset range."""
    length = int(rng.integers(1, support_max + 1))
    offset = int(rng.integers(offset_range[0], offset_range[1] - length + 2))
    values = rng.standard_normal(length)
    if not np.any(values):
        values[0] = 1.0
    return LatticeVector(offset, values)


def random_system(rng: np.random.Generator, max_vectors: int = 6,
                  support_max: int = 20) -> OrthonormalSystem:
    count = int(rng.integers(1, max_vectors + 1))
    while True:
        try:
            return orthonormalize([random_vector(rng, support_max) for _ in range(count)])
        except RankDeficiencyError:  # vanishingly rare for gaussian entries
            continue


def fuzz_lemmas(seed: int, agmon: int = 0, dgsi: int = 0, unitary: int = 0,
                jensen: int = 0, lifting: int = 0, sandwich: int = 0,
                quad_points: int = 64,
                spec: TruncationSpec = DEFAULT_TRUNCATION) -> dict:
    """Run each predicate `n` times on seeded random inputs; summarize worst cases.

    For margin-style predicates the worst case is the minimum margin; for
    gap/error-style ones it is the maximum.  `argworst_index` names the
    sample that attained it.
    """
    rng = np.random.default_rng(seed)
    results = {}

    def run(name, n, sampler, evaluate, worst_is_max):
        if n <= 0:
            return
        worst = None
        arg = None
        for index in range(n):
            value = float(evaluate(sampler()))
            if worst is None or (value > worst if worst_is_max else value < worst):
                worst, arg = value, index
        results[name] = {
            "count": n,
            ("max" if worst_is_max else "min"): worst,
            "argworst_index": arg,
        }

    run("agmon", agmon, lambda: random_vector(rng), check_agmon, worst_is_max=False)
    run("dgsi", dgsi, lambda: random_system(rng), check_dgsi, worst_is_max=False)
    run("unitary", unitary,
        lambda: rng.uniform(-5.0, 5.0, size=int(rng.integers(1, 9))),
        lambda b: check_unitary_equivalence(b, spec), worst_is_max=True)
    run("jensen", jensen,
        lambda: (rng.uniform(0.0, 10.0, size=3), rng.uniform(1.0, 4.0)),
        lambda args: check_jensen(*args[0], args[1]), worst_is_max=False)
    run("lifting", lifting,
        lambda: (rng.uniform(0.1, 10.0), rng.uniform(1.05, 4.0)),
        lambda args: check_al_lifting(args[0], args[1], quad_points), worst_is_max=True)
    run("sandwich", sandwich,
        lambda: CompactPerturbation(
            int(rng.integers(-5, 6)),
            rng.uniform(-5.0, 5.0, size=(k := int(rng.integers(1, 10)))),
            rng.uniform(0.2, 3.0, size=k)),
        lambda p: min(check_sandwich(p, spec)), worst_is_max=False)
    return {"seed": seed, "predicates": results}
