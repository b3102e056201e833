"""Foundation numerics.

Real-argument Gamma via a Lanczos kernel, principal-branch complex powers,
phase-tracked powers for branch continuation along paths, and adaptive
composite Gauss-Legendre quadrature on [0, 1].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .defaults import GL_NODES, PANEL_CAP
from .errors import DomainError, PathResolutionError, QuadratureConvergenceError

__all__ = [
    "BranchTracker",
    "QuadratureResult",
    "gamma_real",
    "principal_power",
    "tracked_power",
    "integrate_gl",
]

# Lanczos approximation, g = 7 with 9 coefficients.
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)
# Above this, t**(z + 0.5) in the kernel would overflow; larger arguments are
# reduced with the recurrence Gamma(x) = (x-1) * Gamma(x-1), which also keeps
# the relative error comfortably inside the 1e-13 contract.
_KERNEL_LIMIT = 141.0


def _lanczos_kernel(x: float) -> float:
    # valid for 0.5 <= x <= _KERNEL_LIMIT
    z = x - 1.0
    s = _LANCZOS_COEF[0]
    for i in range(1, 9):
        s += _LANCZOS_COEF[i] / (z + i)
    t = z + 7.5
    return _SQRT_TWO_PI * t ** (z + 0.5) * math.exp(-t) * s


def gamma_real(x: float) -> float:
    """Gamma(x) for real x > 0, relative error below 1e-13.

    Values beyond the double range (x > 171.62...) come out as inf.
    """
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"gamma_real needs x > 0, got {x!r}")
    if x < 0.5:
        # reflection keeps the kernel argument at or above 0.5
        return math.pi / (math.sin(math.pi * x) * gamma_real(1.0 - x))
    if x <= _KERNEL_LIMIT:
        return _lanczos_kernel(x)
    y = x
    factors = []
    while y > _KERNEL_LIMIT:
        y -= 1.0
        factors.append(y)
    value = _lanczos_kernel(y)
    for f in reversed(factors):  # ascending, so intermediates never exceed the result
        value *= f
    return value


def _recip_gamma(x: float) -> float:
    """1 / Gamma(x) for x > 0; underflows cleanly to 0.0 for huge x."""
    value = gamma_real(x)
    if math.isinf(value):
        return 0.0
    return 1.0 / value


def _principal_arg(w: complex) -> float:
    theta = cmath.phase(w)
    if theta <= -math.pi:  # map the cut consistently onto +pi
        theta += 2.0 * math.pi
    return theta


def principal_power(w: complex, e: float) -> complex:
    """w**e through the principal logarithm, Im log w in (-pi, pi]."""
    w = complex(w)
    if w == 0:
        raise DomainError("principal_power: w = 0 has no logarithm")
    return cmath.exp(e * complex(math.log(abs(w)), _principal_arg(w)))


@dataclass
class BranchTracker:
    """Phase state for one factor along one path.

    Single-path, single-caller state; never share a tracker between
    concurrent evaluations.
    """

    previous_log_imag: float = 0.0
    initialized: bool = False


# Steps of at least (almost) a half turn are ambiguous: the true phase may
# have moved either way around the circle.
_JUMP_LIMIT = math.pi * (1.0 - 1e-9)


def tracked_power(w: complex, e: float, tracker: BranchTracker) -> complex:
    """w**e with the log phase continued from the tracker's previous point.

    The first call seeds the tracker with the principal phase; later calls
    pick the phase congruent to the principal one that is nearest the
    tracked value. A step of a half turn or more raises
    PathResolutionError and the caller must refine its path.
    """
    w = complex(w)
    if w == 0:
        raise DomainError("tracked_power: w = 0 has no logarithm")
    theta = _principal_arg(w)
    if tracker.initialized:
        step = math.remainder(theta - tracker.previous_log_imag, 2.0 * math.pi)
        if abs(step) >= _JUMP_LIMIT:
            raise PathResolutionError(
                f"phase stepped by {step:+.6f} rad at w={w!r}; refine the path"
            )
        theta = tracker.previous_log_imag + step
    tracker.previous_log_imag = theta
    tracker.initialized = True
    return cmath.exp(e * complex(math.log(abs(w)), theta))


def _unwrap_along(phases: np.ndarray):
    """Continue principal phases along the last axis, seeded at 0.

    Paths are assumed to start next to the origin of whatever quantity is
    being tracked, where the phase is 0. Returns (unwrapped, bad) where
    ``bad`` flags rows containing an ambiguous (>= half turn) step.
    """
    steps = np.empty_like(phases)
    steps[..., 0] = phases[..., 0]
    steps[..., 1:] = np.diff(phases, axis=-1)
    steps = np.mod(steps + np.pi, 2.0 * np.pi) - np.pi
    bad = np.any(np.abs(steps) >= _JUMP_LIMIT, axis=-1)
    return np.cumsum(steps, axis=-1), bad


@dataclass(frozen=True)
class QuadratureResult:
    """Integral value with the last refinement's error estimate."""

    value: complex
    error_estimate: float
    panels_used: int


_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_NODES)


def _panel_nodes(n_panels: int):
    """Composite Gauss-Legendre nodes and weights on (0, 1), ascending."""
    half = 0.5 / n_panels
    offsets = np.arange(n_panels) / n_panels
    x = (offsets[:, None] + (_GL_X + 1.0)[None, :] * half).reshape(-1)
    w = np.broadcast_to(_GL_W * half, (n_panels, GL_NODES)).reshape(-1).copy()
    return x, w


def _integrate_batches(batch_eval, target_tol: float, panel_cap: int):
    """Dyadic panel ladder shared by the scalar and array front ends.

    ``batch_eval(x)`` receives all nodes of one refinement pass in ascending
    order and returns their values. The error estimate is the magnitude of
    the difference between consecutive passes.
    """
    previous = None
    error = math.inf
    n_panels = 1
    while n_panels <= panel_cap:
        x, w = _panel_nodes(n_panels)
        current = complex(np.sum(np.asarray(batch_eval(x)) * w))
        if previous is not None:
            error = abs(current - previous)
            if error <= target_tol:
                return current, error, n_panels
        previous = current
        n_panels *= 2
    raise QuadratureConvergenceError(
        f"no convergence to {target_tol:g} within {panel_cap} panels "
        f"(best error estimate {error:g})",
        best=QuadratureResult(previous, error, panel_cap),
    )


def integrate_gl(f, target_tol: float, panel_cap: int = PANEL_CAP) -> QuadratureResult:
    """Integrate a complex-valued f over [0, 1] to the requested tolerance.

    16-node Gauss-Legendre panels are refined dyadically until the estimate
    |result(n panels) - result(2n panels)| drops to target_tol. Nodes are
    visited in ascending order within each pass, so integrands that track
    state along the path see a monotone sweep.
    """
    if not target_tol > 0.0:
        raise DomainError(f"integrate_gl needs target_tol > 0, got {target_tol!r}")

    def batch(x):
        return np.array([complex(f(float(xi))) for xi in x])

    value, error, panels = _integrate_batches(batch, target_tol, panel_cap)
    return QuadratureResult(value, error, panels)
