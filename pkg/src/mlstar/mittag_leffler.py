"""Two-parameter Mittag-Leffler series on the closed unit disk.

Provides the raw series E(z) = sum z^n / Gamma(alpha*n + beta), its
normalization Gamma(beta) * z * E(z) (which fixes value 0 and derivative 1
at the origin), the derivative of the normalization, the logarithmic
derivative z*E'/E, and the hyperbolic closed forms available at alpha = 2,
beta in {1, 2, 3, 4}, which serve as independent oracles.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .defaults import DENOM_GUARD, NEAR_ORIGIN, SERIES_TERM_CAP, SERIES_TOL
from .errors import DomainError, NearZeroDenominatorError, SeriesTruncationError
from .numerics import _recip_gamma, gamma_real

__all__ = [
    "MLParams",
    "SeriesResult",
    "ml_raw",
    "ml_norm",
    "ml_norm_deriv",
    "log_deriv",
    "closed_form",
    "CLOSED_FORM_KINDS",
]


@dataclass(frozen=True)
class MLParams:
    """One (alpha, beta) pair for a normalized Mittag-Leffler factor.

    alpha >= 1 and beta > 0; these are the hypotheses under which every
    order result in this package applies, and they also make all series
    coefficients positive.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if not self.alpha >= 1.0:
            raise DomainError(f"alpha must be >= 1, got {self.alpha!r}")
        if not self.beta > 0.0:
            raise DomainError(f"beta must be > 0, got {self.beta!r}")


@dataclass(frozen=True)
class SeriesResult:
    """Series value plus the number of terms used and a proven tail bound."""

    value: complex
    terms_used: int
    tail_bound: float


def _check_disk(z: complex) -> complex:
    z = complex(z)
    if abs(z) > 1.0 + 1e-12:
        raise DomainError(f"|z| must be <= 1, got |z| = {abs(z)!r}")
    return z


def ml_raw(
    params: MLParams,
    z: complex,
    tol: float = SERIES_TOL,
    term_cap: int = SERIES_TERM_CAP,
) -> SeriesResult:
    """Sum the series z^n / Gamma(alpha*n + beta) for |z| <= 1.

    Summation stops once the term-ratio bound certifies the remaining tail
    below tol: the ratio of consecutive coefficients is monotone decreasing
    (digamma is increasing), so after the first index where it drops to 1/2
    the tail is dominated by a geometric series.
    """
    z = _check_disk(z)
    if not tol > 0.0:
        raise DomainError(f"tol must be > 0, got {tol!r}")
    az = abs(z)
    total = 0j
    zpow = 1.0 + 0j
    a_cur = _recip_gamma(params.beta)
    for n in range(term_cap):
        term = a_cur * zpow
        total += term
        a_next = _recip_gamma(params.alpha * (n + 1) + params.beta)
        ratio = az * a_next / a_cur if a_cur > 0.0 else 0.0
        if ratio <= 0.5:
            tail = abs(term) * ratio / (1.0 - ratio)
            if tail <= tol:
                return SeriesResult(total, n + 1, tail)
        zpow *= z
        a_cur = a_next
    raise SeriesTruncationError(
        f"series tolerance {tol:g} unreachable within {term_cap} terms",
        partial=SeriesResult(total, term_cap, np.inf),
    )


def ml_norm(
    params: MLParams,
    z: complex,
    tol: float = SERIES_TOL,
    term_cap: int = SERIES_TERM_CAP,
) -> SeriesResult:
    """Gamma(beta) * z * E(z): the member of the normalized class.

    Equals z + sum_{n>=2} [Gamma(beta)/Gamma(alpha*(n-1)+beta)] z^n, so the
    value at 0 is 0 and the derivative there is 1.
    """
    z = _check_disk(z)
    if z == 0:
        return SeriesResult(0j, 1, 0.0)
    scale = gamma_real(params.beta) * abs(z)
    raw = ml_raw(params, z, tol / scale, term_cap)
    return SeriesResult(
        gamma_real(params.beta) * z * raw.value,
        raw.terms_used,
        scale * raw.tail_bound,
    )


def ml_norm_deriv(
    params: MLParams,
    z: complex,
    tol: float = SERIES_TOL,
    term_cap: int = SERIES_TERM_CAP,
) -> SeriesResult:
    """Derivative of the normalization: 1 + sum_{n>=2} n c_n z^(n-1)."""
    z = _check_disk(z)
    if not tol > 0.0:
        raise DomainError(f"tol must be > 0, got {tol!r}")
    gb = gamma_real(params.beta)
    az = abs(z)
    total = 1.0 + 0j
    zpow = 1.0 + 0j
    c_cur = gb * _recip_gamma(params.alpha + params.beta)
    for n in range(2, term_cap + 2):
        zpow *= z
        term = n * c_cur * zpow
        total += term
        c_next = gb * _recip_gamma(params.alpha * n + params.beta)
        ratio = az * ((n + 1) / n) * (c_next / c_cur) if c_cur > 0.0 else 0.0
        if ratio <= 0.5:
            tail = abs(term) * ratio / (1.0 - ratio)
            if tail <= tol:
                return SeriesResult(total, n, tail)
        c_cur = c_next
    raise SeriesTruncationError(
        f"series tolerance {tol:g} unreachable within {term_cap} terms",
        partial=SeriesResult(total, term_cap, np.inf),
    )


def log_deriv(
    params: MLParams,
    z: complex,
    tol: float = SERIES_TOL,
) -> complex:
    """z * E'(z) / E(z) for the normalized function, 1 by continuity at 0."""
    z = _check_disk(z)
    if abs(z) < NEAR_ORIGIN:
        # first-order series of z E'/E avoids the 0/0 at the origin
        c2 = gamma_real(params.beta) * _recip_gamma(params.alpha + params.beta)
        return 1.0 + c2 * z
    denom = ml_norm(params, z, tol)
    if abs(denom.value) < DENOM_GUARD:
        raise NearZeroDenominatorError(
            f"normalized value vanished at z = {z!r}", z=z
        )
    numer = ml_norm_deriv(params, z, tol)
    return z * numer.value / denom.value


# closed forms at alpha = 2 (hyperbolic family), keyed by (alpha, beta)
CLOSED_FORM_KINDS = ((2, 1), (2, 2), (2, 3), (2, 4))


def closed_form(kind, z: complex) -> complex:
    """Hyperbolic closed form of the normalized function at alpha = 2.

    kind is one of (2, 1): z*cosh(sqrt z); (2, 2): sqrt(z)*sinh(sqrt z);
    (2, 3): 2*[cosh(sqrt z) - 1]; (2, 4): 6*[sinh(sqrt z) - sqrt z]/sqrt z.
    The removable singularity at the origin is handled by a short series.
    """
    kind = (int(kind[0]), int(kind[1]))
    if kind not in CLOSED_FORM_KINDS:
        raise DomainError(f"no closed form for kind {kind!r}")
    z = complex(z)
    if abs(z) < NEAR_ORIGIN:
        # z * (1 + c2 z + c3 z^2) is exact to double precision this close in
        alpha, beta = kind
        c2 = gamma_real(beta) * _recip_gamma(alpha + beta)
        c3 = gamma_real(beta) * _recip_gamma(2 * alpha + beta)
        return z * (1.0 + c2 * z + c3 * z * z)
    w = cmath.sqrt(z)
    if kind == (2, 1):
        return z * cmath.cosh(w)
    if kind == (2, 2):
        return w * cmath.sinh(w)
    if kind == (2, 3):
        return 2.0 * (cmath.cosh(w) - 1.0)
    return 6.0 * (cmath.sinh(w) - w) / w


# --- array evaluation -----------------------------------------------------
#
# Certification sweeps evaluate the same parameters at tens of thousands of
# points; these helpers share one truncated coefficient vector per
# (params, radius, tol) and run Horner on whole ndarrays.


@lru_cache(maxsize=256)
def _norm_coefficients(alpha: float, beta: float, radius: float, tol: float) -> tuple:
    """Coefficients (c_1, ..., c_N) of E(z)/z, truncated so that the dropped
    tails of both the value and the derivative stay below tol for |z| <= radius."""
    gb = gamma_real(beta)
    coeffs = [1.0]
    c_cur = gb * _recip_gamma(alpha + beta)
    for n in range(2, SERIES_TERM_CAP + 2):
        coeffs.append(c_cur)
        c_next = gb * _recip_gamma(alpha * n + beta)
        # derivative terms n*c_n*r^(n-1) dominate the value terms on the disk
        ratio = radius * ((n + 1) / n) * (c_next / c_cur) if c_cur > 0.0 else 0.0
        if ratio <= 0.5:
            tail = n * c_cur * radius ** (n - 1) * ratio / (1.0 - ratio)
            if tail <= tol:
                return tuple(coeffs)
        c_cur = c_next
    raise SeriesTruncationError(
        f"series tolerance {tol:g} unreachable within {SERIES_TERM_CAP} terms"
    )


def _horner(coeffs: tuple, z: np.ndarray) -> np.ndarray:
    acc = np.full(z.shape, coeffs[-1], dtype=complex)
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    return acc


def _ml_norm_values(params: MLParams, z: np.ndarray, tol: float = SERIES_TOL) -> np.ndarray:
    """Normalized values on an ndarray with |z| <= 1."""
    return np.asarray(z, dtype=complex) * _ml_ratio_values(params, z, tol)


def _ml_ratio_values(params: MLParams, z: np.ndarray, tol: float = SERIES_TOL) -> np.ndarray:
    """E(z)/z on an ndarray: the power series itself, 1 at the origin.

    Evaluating the ratio directly keeps it exact down to arbitrarily small
    |z|, where the normalized value itself underflows toward 0.
    """
    z = np.asarray(z, dtype=complex)
    radius = float(np.max(np.abs(z))) if z.size else 0.0
    coeffs = _norm_coefficients(params.alpha, params.beta, min(radius, 1.0), tol)
    return _horner(coeffs, z)


def _log_deriv_values(params: MLParams, z: np.ndarray, tol: float = SERIES_TOL):
    """z E'/E on an ndarray; returns (values, bad) with zero hits flagged.

    Written as the ratio of two power series in which the leading z cancels,
    so the origin needs no special casing.
    """
    z = np.asarray(z, dtype=complex)
    radius = float(np.max(np.abs(z))) if z.size else 0.0
    coeffs = _norm_coefficients(params.alpha, params.beta, min(radius, 1.0), tol)
    weighted = tuple(n * c for n, c in enumerate(coeffs, start=1))
    denom = _horner(coeffs, z)
    numer = _horner(weighted, z)
    bad = np.abs(z * denom) < DENOM_GUARD
    bad &= np.abs(z) >= NEAR_ORIGIN  # the origin itself is a removable point
    safe = np.where(bad, 1.0, denom)
    return numer / safe, bad
