"""Log-quadratic bounds and approximations of the Gaussian Q-function."""

from .derivation import T_MIN, DerivedParams, a_star, b_star, build_approx
from .errors import DomainError
from .logquad import (
    LogQuadParams,
    chernoff,
    evaluate,
    grad_log,
    log_evaluate,
    mitrinovic_upper,
    residual_lower,
    residual_upper,
    thm1_lower,
    thm1_upper,
    verify_bounds,
)
from .reference import ReferencePoint, ell, ell_prime, log_q, mills_ratio, phi, q_eval
from .tuner import ErrorReport, TuneResult, error_profile, optimize_t, sup_abs_error

__all__ = [
    "T_MIN",
    "DerivedParams",
    "DomainError",
    "ErrorReport",
    "LogQuadParams",
    "ReferencePoint",
    "TuneResult",
    "a_star",
    "b_star",
    "build_approx",
    "chernoff",
    "ell",
    "ell_prime",
    "error_profile",
    "evaluate",
    "grad_log",
    "log_evaluate",
    "log_q",
    "mills_ratio",
    "mitrinovic_upper",
    "optimize_t",
    "phi",
    "q_eval",
    "residual_lower",
    "residual_upper",
    "sup_abs_error",
    "thm1_lower",
    "thm1_upper",
    "verify_bounds",
]

__version__ = "0.1.0"
