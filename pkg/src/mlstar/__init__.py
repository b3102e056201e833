"""Normalized Mittag-Leffler functions, their integral operators, and
sampled certificates for predicted orders of starlikeness and convexity."""

__version__ = "0.1.0"

from .errors import (
    DegenerateOperatorError,
    DomainError,
    JobFileError,
    MLStarError,
    NearZeroDenominatorError,
    PathResolutionError,
    QuadratureConvergenceError,
    SeriesTruncationError,
)
from .numerics import (
    BranchTracker,
    QuadratureResult,
    gamma_real,
    integrate_gl,
    principal_power,
    tracked_power,
)
from .mittag_leffler import (
    CLOSED_FORM_KINDS,
    MLParams,
    SeriesResult,
    closed_form,
    log_deriv,
    ml_norm,
    ml_norm_deriv,
    ml_raw,
)
from .operators import (
    EvalPoint,
    FactorSpec,
    OperatorSpec,
    convex_log_deriv,
    f_conv_value,
    f_value,
    f_zeta_power,
    product_term,
    star_log_deriv,
)
from .orders import (
    GOLDEN_RATIO,
    ConvexOrderReport,
    StarlikeOrderReport,
    convex_delta,
    log_deriv_bound,
    phi,
    psi,
    starlike_delta,
)
from .certify import (
    Certificate,
    FailedPoint,
    GridSpec,
    certify_convex,
    certify_ml_starlike,
    certify_starlike,
    check_log_deriv_bound,
    empirical_order,
)

__all__ = [
    "__version__",
    "BranchTracker",
    "Certificate",
    "CLOSED_FORM_KINDS",
    "ConvexOrderReport",
    "DegenerateOperatorError",
    "DomainError",
    "EvalPoint",
    "FactorSpec",
    "FailedPoint",
    "GOLDEN_RATIO",
    "GridSpec",
    "JobFileError",
    "MLParams",
    "MLStarError",
    "NearZeroDenominatorError",
    "OperatorSpec",
    "PathResolutionError",
    "QuadratureConvergenceError",
    "QuadratureResult",
    "SeriesResult",
    "SeriesTruncationError",
    "StarlikeOrderReport",
    "certify_convex",
    "certify_ml_starlike",
    "certify_starlike",
    "check_log_deriv_bound",
    "closed_form",
    "convex_delta",
    "convex_log_deriv",
    "empirical_order",
    "f_conv_value",
    "f_value",
    "f_zeta_power",
    "gamma_real",
    "integrate_gl",
    "log_deriv_bound",
    "log_deriv",
    "ml_norm",
    "ml_norm_deriv",
    "ml_raw",
    "phi",
    "principal_power",
    "product_term",
    "psi",
    "starlike_delta",
    "star_log_deriv",
    "tracked_power",
]
