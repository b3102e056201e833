"""Sampled-minimum certificates for starlikeness and convexity orders.

A certificate compares a predicted order against the minimum of the
relevant real part over a polar sampling grid of the unit disk. The real
parts involved are harmonic wherever the functions are nonvanishing, so
the disk minimum lives on the outermost sampled circle; inner radii are
kept as diagnostics. A certificate is finite-sample evidence, not a proof,
and says so in its serialized form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .defaults import (
    DENOM_GUARD,
    EVAL_TOLERANCE,
    FAILURE_FRACTION,
    GRID_ANGLES,
    QUAD_TOL_CERTIFY,
    R_MAX,
    SERIES_TOL,
)
from .errors import DomainError
from .mittag_leffler import MLParams, _log_deriv_values
from .operators import EvalPoint, OperatorSpec, _ray_sweep
from .orders import convex_delta, log_deriv_bound, psi, starlike_delta

__all__ = [
    "GridSpec",
    "Certificate",
    "FailedPoint",
    "certify_starlike",
    "certify_convex",
    "certify_ml_starlike",
    "check_log_deriv_bound",
    "empirical_order",
    "QUANTITY_STARLIKE_OPERATOR",
    "QUANTITY_CONVEX_OPERATOR",
    "QUANTITY_STARLIKE_ML",
    "QUANTITY_LOG_DERIV_BOUND",
]

QUANTITY_STARLIKE_OPERATOR = "starlike-operator"
QUANTITY_CONVEX_OPERATOR = "convex-operator"
QUANTITY_STARLIKE_ML = "starlike-ml"
QUANTITY_LOG_DERIV_BOUND = "log-deriv-bound"

VERDICT_PASS = "pass"
VERDICT_FAIL = "fail"
VERDICT_HYPOTHESIS = "hypothesis-violated"

_FAILED_SAMPLE_CAP = 16


def default_radii(r_max: float = R_MAX) -> tuple:
    base = [r for r in (0.25, 0.5, 0.75, 0.9, 0.99) if r < r_max]
    return tuple(base + [r_max])


@dataclass(frozen=True)
class GridSpec:
    """Polar sampling plan: ascending radii plus a uniform angle count.

    The open disk cannot be sampled at radius 1, so r_max < 1 stands in for
    the boundary; it is recorded in every certificate.
    """

    radii: tuple = None
    r_max: float = R_MAX
    angles: int = GRID_ANGLES

    def __post_init__(self):
        if not 0.0 < self.r_max < 1.0:
            raise DomainError(f"r_max must lie in (0, 1), got {self.r_max!r}")
        radii = self.radii
        if radii is None:
            radii = default_radii(self.r_max)
        radii = tuple(float(r) for r in radii)
        if not radii:
            raise DomainError("grid needs at least one radius")
        for a, b in zip(radii, radii[1:]):
            if not a < b:
                raise DomainError(f"radii must ascend strictly, got {radii!r}")
        if not (0.0 < radii[0] and radii[-1] <= self.r_max):
            raise DomainError(f"radii must lie in (0, r_max], got {radii!r}")
        object.__setattr__(self, "radii", radii)
        if not self.angles >= 8:
            raise DomainError(f"need at least 8 angles, got {self.angles!r}")

    def circle_angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.angles) / self.angles

    def total_points(self) -> int:
        return len(self.radii) * self.angles

    def to_dict(self) -> dict:
        return {"radii": list(self.radii), "r_max": self.r_max, "angles": self.angles}


@dataclass(frozen=True)
class FailedPoint:
    point: EvalPoint
    reason: str


@dataclass(frozen=True)
class Certificate:
    """Verdict record for one certified quantity.

    ``observed`` holds the extremal sampled value: a minimum for the order
    quantities and a maximum for the deviation-bound check. ``margin`` is
    always the distance into the safe side, so the pass rule is uniformly
    margin >= -eval_tolerance (with hypotheses intact and few enough failed
    points).
    """

    quantity: str
    predicted: float
    observed: float
    argmin: EvalPoint
    margin: float
    grid: GridSpec
    eval_tolerance: float
    verdict: str
    hypothesis_ok: bool
    failed_count: int = 0
    failed_sample: tuple = ()
    quad_tol: float = None  # None when no quadrature is involved
    series_tol: float = SERIES_TOL
    semantics: str = "sampled-min certificate"

    def to_dict(self) -> dict:
        def clean(x):
            # keep reports strict JSON: no NaN/inf literals
            return x if x is None or math.isfinite(x) else None

        return {
            "quantity": self.quantity,
            "predicted": clean(self.predicted),
            "observed": clean(self.observed),
            "argmin": {
                "radius": self.argmin.radius,
                "angle": self.argmin.angle,
                "re": self.argmin.z.real,
                "im": self.argmin.z.imag,
            },
            "margin": clean(self.margin),
            "grid": self.grid.to_dict(),
            "eval_tolerance": self.eval_tolerance,
            "verdict": self.verdict,
            "hypothesis_ok": self.hypothesis_ok,
            "failed_points": {
                "count": self.failed_count,
                "sample": [
                    {"radius": f.point.radius, "angle": f.point.angle, "reason": f.reason}
                    for f in self.failed_sample
                ],
            },
            "quad_tol": self.quad_tol,
            "series_tol": self.series_tol,
            "semantics": self.semantics,
        }


def _scan(grid: GridSpec, circle_fn, largest: bool = False):
    """Extremize circle_fn over the grid in deterministic order.

    circle_fn(r, z_array) returns (values, list of (angle_index, reason)).
    Ties break toward the smallest radius, then the smallest angle index.
    Returns (extremum, argmin EvalPoint, failures, total_points).
    """
    sign = -1.0 if largest else 1.0
    angles = grid.circle_angles()
    phase = np.exp(1j * angles)
    best = math.inf
    best_point = None
    failures = []
    for r in grid.radii:
        values, fails = circle_fn(r, r * phase)
        masked = sign * np.asarray(values, dtype=float)
        flagged = set()
        for idx, reason in fails:
            masked[idx] = math.inf
            flagged.add(int(idx))
            failures.append(
                FailedPoint(EvalPoint.from_polar(r, float(angles[idx])), reason)
            )
        for idx in np.flatnonzero(~np.isfinite(masked)):  # unflagged nan/inf
            if int(idx) not in flagged:
                failures.append(
                    FailedPoint(EvalPoint.from_polar(r, float(angles[idx])),
                                "nonfinite value")
                )
            masked[idx] = math.inf
        k = int(np.argmin(masked))  # first occurrence, i.e. smallest angle
        if masked[k] < best:
            best = float(masked[k])
            best_point = EvalPoint.from_polar(r, float(angles[k]))
    if best_point is None or math.isinf(best):
        # nothing evaluated; the failure-fraction rule forces a fail verdict
        return math.nan, EvalPoint.from_polar(grid.radii[0], 0.0), failures, grid.total_points()
    return sign * best, best_point, failures, grid.total_points()


def _verdict(margin: float, eval_tolerance: float, hypothesis_ok: bool,
             failed: int, total: int) -> str:
    if failed > FAILURE_FRACTION * total:
        return VERDICT_FAIL
    if not hypothesis_ok:
        return VERDICT_HYPOTHESIS
    return VERDICT_PASS if margin >= -eval_tolerance else VERDICT_FAIL


def _operator_circle(spec, quad_tol, series_tol):
    def circle(r, z):
        p_end, g, err, _, denom_bad, phase_bad = _ray_sweep(
            spec.factors, z, spec.zeta, quad_tol, series_tol
        )
        tiny = np.abs(g) < DENOM_GUARD
        with np.errstate(invalid="ignore", divide="ignore"):
            values = np.real(p_end / np.where(tiny, 1.0, g))
        fails = []
        for idx in range(len(z)):
            if denom_bad[idx]:
                fails.append((idx, "factor vanished or overflowed"))
            elif phase_bad[idx]:
                fails.append((idx, "branch phase jump"))
            elif err[idx] > quad_tol:
                fails.append((idx, "quadrature did not converge"))
            elif tiny[idx]:
                fails.append((idx, "operator integral vanished"))
        return values, fails

    return circle


def certify_starlike(
    spec: OperatorSpec,
    grid: GridSpec = None,
    *,
    eval_tolerance: float = EVAL_TOLERANCE,
    quad_tol: float = QUAD_TOL_CERTIFY,
    series_tol: float = SERIES_TOL,
    predicted: float = None,
) -> Certificate:
    """Certify Re(z F'/F) > delta over the grid for the rooted operator.

    ``predicted`` overrides the closed-form order; negative-control jobs
    use that to verify the certifier can fail.
    """
    grid = grid or GridSpec()
    report = starlike_delta(spec)
    target = report.delta if predicted is None else float(predicted)
    observed, point, failures, total = _scan(
        grid, _operator_circle(spec, quad_tol, series_tol)
    )
    margin = observed - target
    verdict = _verdict(margin, eval_tolerance, report.hypothesis_ok, len(failures), total)
    return Certificate(
        QUANTITY_STARLIKE_OPERATOR, target, observed, point, margin, grid,
        eval_tolerance, verdict, report.hypothesis_ok,
        len(failures), tuple(failures[:_FAILED_SAMPLE_CAP]), quad_tol, series_tol,
    )


def _convex_circle(factors, series_tol):
    weight = sum(1.0 / f.lam for f in factors)

    def circle(r, z):
        total = np.full(z.shape, 1.0 - weight)
        bad_any = np.zeros(z.shape, dtype=bool)
        for f in factors:
            vals, bad = _log_deriv_values(f.params, z, series_tol)
            total = total + np.real(vals) / f.lam
            bad_any |= bad
        fails = [(idx, "factor vanished") for idx in np.flatnonzero(bad_any)]
        return total, fails

    return circle


def certify_convex(
    factors,
    grid: GridSpec = None,
    *,
    eval_tolerance: float = EVAL_TOLERANCE,
    series_tol: float = SERIES_TOL,
    predicted: float = None,
) -> Certificate:
    """Certify Re(1 + z F''/F') > delta for the zeta-free operator."""
    factors = tuple(factors)
    grid = grid or GridSpec()
    report = convex_delta(factors)
    target = report.delta if predicted is None else float(predicted)
    observed, point, failures, total = _scan(grid, _convex_circle(factors, series_tol))
    margin = observed - target
    verdict = _verdict(margin, eval_tolerance, report.hypothesis_ok, len(failures), total)
    return Certificate(
        QUANTITY_CONVEX_OPERATOR, target, observed, point, margin, grid,
        eval_tolerance, verdict, report.hypothesis_ok,
        len(failures), tuple(failures[:_FAILED_SAMPLE_CAP]),
        None, series_tol,
    )


def _ml_circle(params, series_tol, absolute_deviation=False):
    def circle(r, z):
        vals, bad = _log_deriv_values(params, z, series_tol)
        if absolute_deviation:
            values = np.abs(vals - 1.0)
        else:
            values = np.real(vals)
        fails = [(idx, "normalized value vanished") for idx in np.flatnonzero(bad)]
        return values, fails

    return circle


def certify_ml_starlike(
    params: MLParams,
    eta: float,
    grid: GridSpec = None,
    *,
    eval_tolerance: float = EVAL_TOLERANCE,
    series_tol: float = SERIES_TOL,
    predicted: float = None,
) -> Certificate:
    """Certify Re(z E'/E) > eta for one normalized function."""
    if not 0.0 <= eta < 1.0:
        raise DomainError(f"eta must lie in [0, 1), got {eta!r}")
    grid = grid or GridSpec()
    hypothesis_ok = params.alpha >= 1.0 and params.beta >= psi(eta)
    target = eta if predicted is None else float(predicted)
    observed, point, failures, total = _scan(grid, _ml_circle(params, series_tol))
    margin = observed - target
    verdict = _verdict(margin, eval_tolerance, hypothesis_ok, len(failures), total)
    return Certificate(
        QUANTITY_STARLIKE_ML, target, observed, point, margin, grid,
        eval_tolerance, verdict, hypothesis_ok,
        len(failures), tuple(failures[:_FAILED_SAMPLE_CAP]),
        None, series_tol,
    )


def check_log_deriv_bound(
    params: MLParams,
    grid: GridSpec = None,
    *,
    eval_tolerance: float = EVAL_TOLERANCE,
    series_tol: float = SERIES_TOL,
    predicted: float = None,
) -> Certificate:
    """Check the uniform bound on |z E'/E - 1| over the grid.

    Passes when the observed maximum stays within eval_tolerance of the
    bound; the margin is bound - max so the sign convention matches the
    other certificates.
    """
    grid = grid or GridSpec()
    bound = log_deriv_bound(params)  # raises DomainError for beta at/below golden
    target = bound if predicted is None else float(predicted)
    observed, point, failures, total = _scan(
        grid, _ml_circle(params, series_tol, absolute_deviation=True), largest=True
    )
    margin = target - observed
    verdict = _verdict(margin, eval_tolerance, True, len(failures), total)
    return Certificate(
        QUANTITY_LOG_DERIV_BOUND, target, observed, point, margin, grid,
        eval_tolerance, verdict, True,
        len(failures), tuple(failures[:_FAILED_SAMPLE_CAP]),
        None, series_tol,
    )


def empirical_order(evaluator, grid: GridSpec = None) -> float:
    """Minimum of Re(evaluator(z)) over the grid, with no prediction attached.

    Diagnostic companion to the certificates, useful when hypotheses fail.
    Evaluation errors propagate.
    """
    grid = grid or GridSpec()

    def circle(r, z):
        return np.array([complex(evaluator(complex(p))).real for p in z]), []

    observed, _, _, _ = _scan(grid, circle)
    return observed
