"""Searches perturbation space for the largest lhs/rhs inequality ratios.

The bounds are theorems, so a ratio above 1 + slack is a bug report, not
a discovery; the interesting output is how close to 1 each variant gets
and on which perturbations.  The objective is piecewise smooth with kinks
where bound states are born at the band edge and identically zero while
the discrete spectrum is empty, so the optimizer is derivative-free:
Nelder-Mead (scipy) from seeded random restarts, or a deterministic
cyclic coordinate scan.  Everything is reproducible from the seed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import StabilizationError, UsageError
from .lattice import CompactPerturbation
from .ltcheck import SCHRODINGER_VARIANTS, check, validate_hypotheses
from .operators import DEFAULT_TRUNCATION, TruncationSpec

logger = logging.getLogger(__name__)

OPTIMIZERS = ("nelder-mead", "coordinate-scan")


@dataclass(frozen=True)
class SearchConfig:
    variant: str
    gamma: float
    support_size: int = 1
    vary_a: bool = False
    b_bounds: tuple[float, float] = (-5.0, 5.0)
    a_bounds: tuple[float, float] = (0.2, 3.0)
    restarts: int = 8
    seed: int = 0
    optimizer: str = "nelder-mead"
    max_evals: int = 400  # per restart

    def __post_init__(self):
        if self.support_size < 1:
            raise UsageError("support_size must be >= 1")
        if self.restarts < 1:
            raise UsageError("restarts must be >= 1")
        if self.max_evals < 10:
            raise UsageError("max_evals must be >= 10")
        if self.optimizer not in OPTIMIZERS:
            raise UsageError(f"optimizer must be one of {OPTIMIZERS}")
        if self.b_bounds[0] > self.b_bounds[1] or self.a_bounds[0] > self.a_bounds[1]:
            raise UsageError("bounds must satisfy lo <= hi")
        if self.vary_a and self.a_bounds[0] <= 0.0:
            raise UsageError("a bounds must stay positive")
        if self.vary_a and self.variant in SCHRODINGER_VARIANTS:
            raise UsageError(f"variant {self.variant!r} assumes free couplings; vary_a is invalid")
        # validate variant/gamma pairing up front (empty perturbation is always legal)
        validate_hypotheses(CompactPerturbation(), self.variant, self.gamma)

    @property
    def dimension(self) -> int:
        return self.support_size * (2 if self.vary_a else 1)

    def lower(self) -> np.ndarray:
        lo = np.full(self.dimension, self.b_bounds[0])
        if self.vary_a:
            lo[self.support_size:] = self.a_bounds[0]
        return lo

    def upper(self) -> np.ndarray:
        hi = np.full(self.dimension, self.b_bounds[1])
        if self.vary_a:
            hi[self.support_size:] = self.a_bounds[1]
        return hi

    def as_dict(self) -> dict:
        return {
            "variant": self.variant,
            "gamma": self.gamma,
            "support_size": self.support_size,
            "vary_a": self.vary_a,
            "b_bounds": list(self.b_bounds),
            "a_bounds": list(self.a_bounds),
            "restarts": self.restarts,
            "seed": self.seed,
            "optimizer": self.optimizer,
            "max_evals": self.max_evals,
        }


@dataclass
class SearchResult:
    best_ratio: float
    best_perturbation: CompactPerturbation
    evals_used: int
    per_restart_ratios: list[float] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "best_ratio": self.best_ratio,
            "best_perturbation": self.best_perturbation.to_json_dict(),
            "evals_used": self.evals_used,
            "per_restart_ratios": list(self.per_restart_ratios),
        }


def decode_parameters(x: np.ndarray, config: SearchConfig) -> CompactPerturbation:
    """Clip a raw parameter vector into a valid perturbation for the variant."""
    x = np.clip(np.asarray(x, dtype=float), config.lower(), config.upper())
    k = config.support_size
    b = x[:k]
    if config.variant in SCHRODINGER_VARIANTS:
        b = np.maximum(b, 0.0)
    a = x[k:] if config.vary_a else None
    return CompactPerturbation(0, b, a)


def ratio_objective(x: np.ndarray, config: SearchConfig,
                    spec: TruncationSpec = DEFAULT_TRUNCATION) -> float:
    """lhs/rhs ratio at the decoded perturbation; 0 when no bound states exist."""
    pert = decode_parameters(x, config)
    if pert.is_empty:
        return 0.0
    try:
        return check(pert, config.variant, config.gamma, spec).ratio
    except StabilizationError as exc:
        logger.warning("objective refused unstable point %s: %s", x, exc)
        return 0.0


def _coordinate_scan(objective, x0, lower, upper, budget: int, grid: int = 33):
    """Cyclic axis-aligned grid descent; deterministic and derivative-free."""
    x = x0.copy()
    best = objective(x)
    evals = 1
    improved = True
    while improved and evals < budget:
        improved = False
        for axis in range(len(x)):
            values = np.linspace(lower[axis], upper[axis], grid)
            for v in values:
                if evals >= budget:
                    break
                trial = x.copy()
                trial[axis] = v
                f = objective(trial)
                evals += 1
                if f > best:
                    best, x = f, trial
                    improved = True
    return x, best, evals


def _sample_start(rng: np.random.Generator, config: SearchConfig,
                  objective, max_tries: int = 20):
    """Seeded random start, redrawn while the spectrum-free region gives 0."""
    lower, upper = config.lower(), config.upper()
    start = rng.uniform(lower, upper)
    value = objective(start)
    tries = 1
    while value == 0.0 and tries < max_tries:
        start = rng.uniform(lower, upper)
        value = objective(start)
        tries += 1
    return start, value, tries


def maximize_ratio(config: SearchConfig,
                   spec: TruncationSpec = DEFAULT_TRUNCATION) -> SearchResult:
    """Best ratio over seeded random restarts; deterministic given the config."""
    rng = np.random.default_rng(config.seed)
    lower, upper = config.lower(), config.upper()
    evals = 0

    def objective(x):
        nonlocal evals
        evals += 1
        return ratio_objective(x, config, spec)

    per_restart: list[float] = []
    best_ratio = -np.inf
    best_x = lower.copy()
    for _ in range(config.restarts):
        start, start_value, tries = _sample_start(rng, config, objective)
        budget = max(config.max_evals - tries, 10)
        if config.optimizer == "nelder-mead":
            outcome = minimize(
                lambda x: -objective(x), start, method="Nelder-Mead",
                bounds=list(zip(lower, upper)),
                options={"maxfev": budget, "xatol": 1e-8, "fatol": 1e-12},
            )
            x_found, found = np.asarray(outcome.x), -float(outcome.fun)
        else:
            x_found, found, _ = _coordinate_scan(objective, start, lower, upper, budget)
        if start_value > found:  # optimizer never loses the start point
            x_found, found = start, start_value
        per_restart.append(found)
        if found > best_ratio:
            best_ratio, best_x = found, x_found
    return SearchResult(
        best_ratio=float(best_ratio),
        best_perturbation=decode_parameters(best_x, config),
        evals_used=evals,
        per_restart_ratios=per_restart,
    )


def ratio_scan(config: SearchConfig, points: int = 512,
               spec: TruncationSpec = DEFAULT_TRUNCATION) -> np.ndarray:
    """Dense single-site amplitude scan (k = 1 only): rows of (amplitude, ratio)."""
    if config.support_size != 1 or config.vary_a:
        raise UsageError("ratio_scan is defined for support_size 1 without coupling search")
    lo, hi = config.b_bounds
    if config.variant in SCHRODINGER_VARIANTS:
        lo = max(lo, 0.0)
    amplitudes = np.linspace(lo, hi, points)
    rows = np.empty((points, 2))
    for i, beta in enumerate(amplitudes):
        rows[i] = (beta, ratio_objective(np.array([beta]), config, spec))
    return rows
