"""Both sides of each spectral inequality variant, assembled into reports.

Variants:

  hs1          sum sqrt(E^2 - 4) over bound states of W
                 <= sum|b_n| + 4 sum|a_n - 1|            (sharp)
  hs-gamma     sum |E -+ 2|^gamma  <=  c_hs * [sum|b|^{g+1/2} + 4 sum|a-1|^{g+1/2}],
                 gamma >= 1/2
  new-gamma-jacobi
               same left side  <=  c_new_jacobi * same bracket, gamma >= 1
  new-gamma-schrodinger
               sum |e_j|^gamma over negative eigenvalues of D*D - b, b >= 0,
                 <= c_new_schrodinger * sum b^{g+1/2}, gamma >= 1
  new-gamma-schrodinger-positive
               the mirror image for positive eigenvalues of -D*D + b

The checker computes bound states by adaptive Dirichlet truncation
(margin doubling until every eigenvalue moves less than the stability
tolerance), evaluates the Riesz mean and the potential functional, and
reports the ratio lhs/rhs.  A ratio above 1 + solver_slack would flag a
bug somewhere (these are theorems), never a discovery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import StabilizationError, UsageError
from .lattice import CompactPerturbation
from .operators import (
    DEFAULT_TRUNCATION,
    TruncationSpec,
    jacobi_matrix,
    schrodinger_matrix,
)
from .specfun import LTConstants, constants_for
from .trieig import eigenvalues_outside

VARIANTS = (
    "hs1",
    "hs-gamma",
    "new-gamma-jacobi",
    "new-gamma-schrodinger",
    "new-gamma-schrodinger-positive",
)
JACOBI_VARIANTS = ("hs1", "hs-gamma", "new-gamma-jacobi")
SCHRODINGER_VARIANTS = ("new-gamma-schrodinger", "new-gamma-schrodinger-positive")

JACOBI_BAND = (-2.0, 2.0)

SOLVER_SLACK = 1e-9
MARGIN_CAP = 4096


def min_gamma(variant: str) -> float:
    """Smallest moment order for which the variant states a theorem."""
    if variant not in VARIANTS:
        raise UsageError(f"unknown variant {variant!r}; choose from {', '.join(VARIANTS)}")
    return 0.5 if variant in ("hs1", "hs-gamma") else 1.0


def validate_hypotheses(pert: CompactPerturbation, variant: str, gamma: float) -> None:
    """Reject inputs outside the variant's theorem hypotheses."""
    lo = min_gamma(variant)
    if gamma < lo:
        raise UsageError(f"variant {variant!r} requires gamma >= {lo}, got {gamma}")
    if variant in SCHRODINGER_VARIANTS:
        if np.any(pert.b < 0.0):
            raise UsageError(f"variant {variant!r} requires b_n >= 0")
        if not pert.has_free_couplings:
            raise UsageError(f"variant {variant!r} requires free couplings (a_n = 1)")


@dataclass
class SpectralReport:
    """Outcome of one inequality check."""

    variant: str
    gamma: float
    eigenvalues_below: list[float]
    eigenvalues_above: list[float]
    lhs: float
    rhs: float
    ratio: float
    margin_used: int
    constants: LTConstants
    solver_slack: float = SOLVER_SLACK

    @property
    def violation(self) -> bool:
        return self.ratio > 1.0 + self.solver_slack

    def as_dict(self) -> dict:
        return {
            "variant": self.variant,
            "gamma": self.gamma,
            "eigenvalues_below": list(self.eigenvalues_below),
            "eigenvalues_above": list(self.eigenvalues_above),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "margin_used": self.margin_used,
            "constants": self.constants.as_dict(),
            "solver_slack": self.solver_slack,
            "violation": self.violation,
        }


def _stabilized_outside(build, lo: float, hi: float, spec: TruncationSpec):
    """Refine the truncation margin until out-of-band eigenvalues settle.

    `build(margin)` must return the SymTridiag truncation.  Bisection runs
    two decades below stability_tol so the movement comparison is not
    dominated by solver noise.
    """
    eig_tol = max(spec.stability_tol * 1e-2, 1e-14)
    margin = spec.margin
    prev = None
    while margin <= MARGIN_CAP:
        below, above = eigenvalues_outside(build(margin), lo, hi, eig_tol)
        if prev is not None:
            p_below, p_above = prev
            if len(p_below) == len(below) and len(p_above) == len(above):
                moves = np.concatenate([np.abs(p_below - below), np.abs(p_above - above)])
                if moves.size == 0 or float(np.max(moves)) < spec.stability_tol:
                    return below, above, margin
        prev = (below, above)
        margin *= spec.growth_factor
    last_margin = margin // spec.growth_factor
    raise StabilizationError(last_margin, prev, eigenvalues_outside(build(last_margin), lo, hi, eig_tol))


def bound_states(pert: CompactPerturbation, essential: tuple[float, float] = JACOBI_BAND,
                 spec: TruncationSpec = DEFAULT_TRUNCATION):
    """Eigenvalues of W outside the essential band, with the margin that settled them."""
    lo, hi = essential
    if lo > hi:
        raise UsageError(f"nonsensical essential interval ({lo}, {hi})")
    return _stabilized_outside(lambda m: jacobi_matrix(pert, spec, margin=m), lo, hi, spec)


def schrodinger_bound_states(b, offset: int = 0, sign: int = +1,
                             spec: TruncationSpec = DEFAULT_TRUNCATION):
    """Bound states of D*D - b (sign +1, band [0,4]) or -D*D + b (sign -1, band [-4,0])."""
    lo, hi = (0.0, 4.0) if sign == +1 else (-4.0, 0.0)
    return _stabilized_outside(
        lambda m: schrodinger_matrix(b, offset, sign, spec, margin=m), lo, hi, spec
    )


def riesz_hs1(below, above) -> float:
    """sum sqrt(E^2 - 4) over both bound-state lists; requires |E| >= 2."""
    total = 0.0
    for e in list(below) + list(above):
        e = float(e)
        if abs(e) < 2.0:
            raise UsageError(f"riesz_hs1 needs |E| >= 2, got {e}")
        total += math.sqrt(e * e - 4.0)
    return total


def riesz_gamma(below, above, gamma: float,
                lower_edge: float = -2.0, upper_edge: float = 2.0) -> float:
    """sum |E - lower_edge|^gamma over below + sum |E - upper_edge|^gamma over above."""
    if gamma < 0.5:
        raise UsageError(f"riesz_gamma requires gamma >= 1/2, got {gamma}")
    total = 0.0
    for e in below:
        total += abs(float(e) - lower_edge) ** gamma
    for e in above:
        total += abs(float(e) - upper_edge) ** gamma
    return total


def potential_bracket(pert: CompactPerturbation, power: float) -> float:
    """sum |b_n|^power + 4 sum |a_n - 1|^power over the stored window."""
    return float(np.sum(np.abs(pert.b) ** power) + 4.0 * np.sum(np.abs(pert.a - 1.0) ** power))


def rhs_functional(pert: CompactPerturbation, variant: str, gamma: float) -> float:
    """The variant's potential-side functional, constant included."""
    validate_hypotheses(pert, variant, gamma)
    if variant == "hs1":
        return potential_bracket(pert, 1.0)
    consts = constants_for(gamma)
    power = gamma + 0.5
    if variant == "hs-gamma":
        return consts.c_hs * potential_bracket(pert, power)
    if variant == "new-gamma-jacobi":
        return consts.c_new_jacobi * potential_bracket(pert, power)
    # schrodinger variants: hypotheses give b >= 0 and a = 1
    return consts.c_new_schrodinger * float(np.sum(pert.b ** power))


def check(pert: CompactPerturbation, variant: str, gamma: float | None = None,
          spec: TruncationSpec = DEFAULT_TRUNCATION) -> SpectralReport:
    """Run one full inequality check and report the lhs/rhs ratio.

    For hs1 the moment order is fixed at 1/2 and `gamma` is ignored.
    """
    if variant == "hs1":
        gamma = 0.5
    elif gamma is None:
        raise UsageError(f"variant {variant!r} requires an explicit gamma")
    validate_hypotheses(pert, variant, gamma)

    if variant in JACOBI_VARIANTS:
        below, above, margin_used = bound_states(pert, JACOBI_BAND, spec)
        if variant == "hs1":
            lhs = riesz_hs1(below, above)
        else:
            lhs = riesz_gamma(below, above, gamma)
    elif variant == "new-gamma-schrodinger":
        below, above, margin_used = schrodinger_bound_states(pert.b, pert.offset, +1, spec)
        lhs = riesz_gamma(below, [], gamma, lower_edge=0.0)
    else:  # new-gamma-schrodinger-positive
        below, above, margin_used = schrodinger_bound_states(pert.b, pert.offset, -1, spec)
        lhs = riesz_gamma([], above, gamma, upper_edge=0.0)

    rhs = rhs_functional(pert, variant, gamma)
    if lhs == 0.0 and rhs == 0.0:
        ratio = 0.0
    elif rhs == 0.0:
        ratio = math.inf
    else:
        ratio = lhs / rhs
    return SpectralReport(
        variant=variant,
        gamma=gamma,
        eigenvalues_below=[float(e) for e in below],
        eigenvalues_above=[float(e) for e in above],
        lhs=lhs,
        rhs=rhs,
        ratio=ratio,
        margin_used=margin_used,
        constants=constants_for(gamma),
    )


# ---------------------------------------------------------------------------
# seeded fuzzing over random compact perturbations
# ---------------------------------------------------------------------------

def random_perturbation(rng: np.random.Generator, support_max: int = 9,
                        b_max: float = 5.0, a_range: tuple[float, float] = (0.2, 3.0),
                        vary_a: bool = True, nonnegative_b: bool = False) -> CompactPerturbation:
    """One random compact perturbation of the fuzzing family."""
    k = int(rng.integers(1, support_max + 1))
    offset = int(rng.integers(-5, 6))
    b = rng.uniform(0.0 if nonnegative_b else -b_max, b_max, size=k)
    a = rng.uniform(a_range[0], a_range[1], size=k) if vary_a else None
    return CompactPerturbation(offset, b, a)


def fuzz_theorems(count: int, seed: int, gammas=(1.0, 1.5, 2.0, 3.0),
                  variants=VARIANTS, support_max: int = 9, b_max: float = 5.0,
                  a_range: tuple[float, float] = (0.2, 3.0),
                  spec: TruncationSpec = DEFAULT_TRUNCATION) -> dict:
    """Check every requested variant/gamma on `count` seeded random inputs.

    Eigenvalues are computed once per operator and shared across the
    moment orders.  Returns a summary with the worst ratio and its
    sample index per (variant, gamma), plus any stabilization refusals.
    """
    jacobi_wanted = [v for v in variants if v in JACOBI_VARIANTS]
    schrodinger_wanted = [v for v in variants if v in SCHRODINGER_VARIANTS]
    for v in variants:
        if v not in VARIANTS:
            raise UsageError(f"unknown variant {v!r}")

    stats = {
        (v, g): {"checked": 0, "max_ratio": 0.0, "argmax_index": None, "violations": 0}
        for v in variants for g in ((0.5,) if v == "hs1" else tuple(gammas))
    }
    failures = []

    def record(variant, gamma, index, lhs, rhs):
        cell = stats[(variant, gamma)]
        cell["checked"] += 1
        ratio = 0.0 if (lhs == 0.0 and rhs == 0.0) else (math.inf if rhs == 0.0 else lhs / rhs)
        if ratio > cell["max_ratio"]:
            cell["max_ratio"] = ratio
            cell["argmax_index"] = index
        if ratio > 1.0 + SOLVER_SLACK:
            cell["violations"] += 1

    rng = np.random.default_rng(seed)
    for index in range(count):
        pert = random_perturbation(rng, support_max, b_max, a_range, vary_a=True)
        pos = random_perturbation(rng, support_max, b_max, (1.0, 1.0),
                                  vary_a=False, nonnegative_b=True)
        if jacobi_wanted:
            try:
                below, above, _ = bound_states(pert, JACOBI_BAND, spec)
            except StabilizationError as exc:
                failures.append({"index": index, "operator": "jacobi", "error": str(exc)})
            else:
                for variant in jacobi_wanted:
                    if variant == "hs1":
                        record("hs1", 0.5, index, riesz_hs1(below, above),
                               rhs_functional(pert, "hs1", 0.5))
                        continue
                    for g in gammas:
                        record(variant, g, index, riesz_gamma(below, above, g),
                               rhs_functional(pert, variant, g))
        for variant, sign in (("new-gamma-schrodinger", +1),
                              ("new-gamma-schrodinger-positive", -1)):
            if variant not in schrodinger_wanted:
                continue
            try:
                below, above, _ = schrodinger_bound_states(pos.b, pos.offset, sign, spec)
            except StabilizationError as exc:
                failures.append({"index": index, "operator": variant, "error": str(exc)})
                continue
            for g in gammas:
                lhs = (riesz_gamma(below, [], g, lower_edge=0.0) if sign == +1
                       else riesz_gamma([], above, g, upper_edge=0.0))
                record(variant, g, index, lhs, rhs_functional(pos, variant, g))

    cells = [
        {"variant": v, "gamma": g, **cell}
        for (v, g), cell in sorted(stats.items(), key=lambda kv: (kv[0][0], kv[0][1]))
    ]
    return {
        "count": count,
        "seed": seed,
        "cells": cells,
        "stabilization_failures": failures,
        "violations": int(sum(c["violations"] for c in cells)),
        "max_ratio": max((c["max_ratio"] for c in cells), default=0.0),
    }
