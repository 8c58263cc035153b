"""Closed-form log-quadratic fit by matching log-derivatives on ``[0, t]``.

The curvature ``a`` is chosen so the integral of ``-2a`` over ``[0, t]``
equals the integral of ``ell'``; the slope ``b`` then matches the integral
of ``ell``; ``c = log 2`` pins ``Qhat(0) = 1/2``. Both integrals have closed
forms, so only a single reference evaluation at ``t`` is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import reference
from .errors import DomainError
from .logquad import LN2, SQRT_2_OVER_PI, LogQuadParams

__all__ = [
    "T_MIN",
    "DerivedParams",
    "a_star",
    "b_star",
    "b_star_from_a",
    "build_approx",
]

#: Smallest supported matching horizon; ``a_star`` is 0/0 at ``t = 0``.
T_MIN = 1e-3

_B_AGREEMENT = 1e-12


@dataclass(frozen=True)
class DerivedParams:
    t: float
    a_star: float
    b_star: float
    params: LogQuadParams


def _check_t(t: float) -> float:
    t = float(t)
    if not math.isfinite(t) or t < T_MIN:
        raise DomainError(f"t must be finite and >= {T_MIN}, got {t!r}")
    return t


def _hazard_excess(t: float) -> float:
    # sqrt(2/pi) - phi(t)/Q(t), the integral of ell' over [0, t]
    return SQRT_2_OVER_PI + reference.ell(t)


def a_star(t: float) -> float:
    """Curvature coefficient for horizon ``t``; lies in ``(1/pi, 1/2)``."""
    t = _check_t(t)
    return -_hazard_excess(t) / (2.0 * t)


def b_star(t: float) -> float:
    """Slope coefficient for horizon ``t``, tends to ``sqrt(2/pi)`` as ``t -> 0``."""
    t = _check_t(t)
    return 0.5 * _hazard_excess(t) - (LN2 + reference.log_q(t)) / t


def b_star_from_a(t: float) -> float:
    """Same as :func:`b_star`, written as ``-a*t - log(2 Q(t)) / t``."""
    t = _check_t(t)
    return -a_star(t) * t - (LN2 + reference.log_q(t)) / t


def build_approx(t: float) -> DerivedParams:
    """Assemble the derived approximation for horizon ``t``.

    Raises:
        DomainError: if ``t < T_MIN``.
        ArithmeticError: if the two forms of the slope disagree.
    """
    t = _check_t(t)
    a = a_star(t)
    b = b_star(t)
    b_alt = b_star_from_a(t)
    if abs(b - b_alt) > _B_AGREEMENT * max(1.0, abs(b)):
        raise ArithmeticError(f"slope forms disagree at t={t!r}: {b!r} vs {b_alt!r}")
    return DerivedParams(t, a, b, LogQuadParams(a, b, LN2, f"derived({t!r})"))
