"""Closed-form starlikeness and convexity orders with hypothesis checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .mittag_leffler import MLParams
from .operators import OperatorSpec

__all__ = [
    "GOLDEN_RATIO",
    "psi",
    "phi",
    "log_deriv_bound",
    "starlike_delta",
    "convex_delta",
    "StarlikeOrderReport",
    "ConvexOrderReport",
]

GOLDEN_RATIO = 0.5 * (1.0 + math.sqrt(5.0))


def psi(eta: float) -> float:
    """Beta threshold above which the normalized function is starlike of order eta.

    psi(eta) = [(3 - eta) + sqrt(5 eta^2 - 18 eta + 17)] / [2 (1 - eta)],
    strictly increasing on [0, 1) and divergent as eta -> 1.
    """
    eta = float(eta)
    if not 0.0 <= eta < 1.0:
        raise DomainError(f"eta must lie in [0, 1), got {eta!r}")
    return ((3.0 - eta) + math.sqrt(5.0 * eta * eta - 18.0 * eta + 17.0)) / (
        2.0 * (1.0 - eta)
    )


def phi(beta: float) -> float:
    """Bound coefficient (2 beta + 1) / (beta^2 - beta - 1).

    Defined and strictly decreasing for beta above the golden ratio, where
    the denominator is positive.
    """
    beta = float(beta)
    if not beta > GOLDEN_RATIO:
        raise DomainError(
            f"beta must exceed (1 + sqrt 5)/2 = {GOLDEN_RATIO:.10f}, got {beta!r}"
        )
    return (2.0 * beta + 1.0) / (beta * beta - beta - 1.0)


def log_deriv_bound(params: MLParams) -> float:
    """Uniform disk bound on |z E'/E - 1| for the normalized function."""
    return phi(params.beta)


@dataclass(frozen=True)
class StarlikeOrderReport:
    """Predicted starlikeness order of the operator plus hypothesis status."""

    delta: float
    hypothesis_sum: float    # sum (1 - eta_j) / lambda_j
    zeta: float
    hypothesis_ok: bool


@dataclass(frozen=True)
class ConvexOrderReport:
    """Predicted convexity order of the zeta-free operator plus hypothesis status."""

    delta: float
    beta_min: float
    bound_sum: float         # phi(beta_min) * sum 1/lambda_j
    hypothesis_ok: bool


def starlike_delta(spec: OperatorSpec) -> StarlikeOrderReport:
    """Predicted order: the positive root of 2 zeta d^2 + b d - 1 = 0 where
    b = sum 2(1 - eta_j)/lambda_j - 2 zeta + 1.

    The order is reported even when the hypotheses fail; the flag records
    whether sum (1 - eta_j)/lambda_j <= zeta and beta_j >= psi(eta_j) with
    alpha_j >= 1 for every factor.
    """
    zeta = spec.zeta
    hyp_sum = sum((1.0 - f.eta) / f.lam for f in spec.factors)
    b = 2.0 * hyp_sum - 2.0 * zeta + 1.0
    delta = (-b + math.sqrt(b * b + 8.0 * zeta)) / (4.0 * zeta)
    hypothesis_ok = hyp_sum <= zeta and all(
        f.params.alpha >= 1.0 and f.params.beta >= psi(f.eta) for f in spec.factors
    )
    return StarlikeOrderReport(delta, hyp_sum, zeta, hypothesis_ok)


def convex_delta(factors) -> ConvexOrderReport:
    """Predicted convexity order 1 - phi(min beta_j) * sum 1/lambda_j.

    Every beta_j must exceed the golden ratio for the bound coefficient to
    exist; the flag additionally records whether the order lands in [0, 1).
    """
    factors = tuple(factors)
    if not factors:
        raise DomainError("an operator needs at least one factor")
    beta_min = min(f.params.beta for f in factors)
    bound_sum = phi(beta_min) * sum(1.0 / f.lam for f in factors)
    delta = 1.0 - bound_sum
    hypothesis_ok = 0.0 <= delta < 1.0 and all(f.params.alpha >= 1.0 for f in factors)
    return ConvexOrderReport(delta, beta_min, bound_sum, hypothesis_ok)
