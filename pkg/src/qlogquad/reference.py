"""High-precision reference values for the standard normal tail.

Everything here is scalar and pure. The tail probability is computed by two
independent routes:

* a convergent power series, summed in 40-digit decimal arithmetic so the
  subtraction ``1/2 - phi(x) * S(x)`` does not eat the result, used for
  ``0 <= x < 3``;
* the Laplace continued fraction for the Mills ratio, evaluated with the
  modified Lentz algorithm in binary floating point, used for ``x >= 3``.

Both are exposed (:func:`q_series`, :func:`q_continued_fraction`) so their
agreement can be checked on an overlap window. Negative arguments go through
the reflection ``Q(-x) = 1 - Q(x)``.

For ``x`` beyond about 37.5 the tail probability is subnormal and eventually
underflows to zero; :func:`log_q` stays accurate there and
:attr:`ReferencePoint.saturated` flags the loss of precision.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from decimal import Context, Decimal, localcontext

from .errors import DomainError

__all__ = [
    "SERIES_CUTOFF",
    "ReferencePoint",
    "phi",
    "q_eval",
    "log_q",
    "mills_ratio",
    "ell",
    "ell_prime",
    "q_series",
    "q_continued_fraction",
    "reference_point",
]

INV_SQRT_2PI = 0.3989422804014327
LOG_SQRT_2PI = 0.9189385332046728

#: Arguments below this use the series, at or above it the continued fraction.
SERIES_CUTOFF = 3.0

_SERIES_MAX = 8.0
_CF_MAX_TERMS = 20000
_CF_TINY = 1e-300

_DEC_CTX = Context(prec=40)
_DEC_INV_SQRT_2PI = Decimal("0.3989422804014326779399460599343818684758586311649346577")
_DEC_HALF = Decimal("0.5")
_DEC_EPS = Decimal("1e-42")

_SPLITTER = 134217729.0  # 2**27 + 1


@dataclass(frozen=True)
class ReferencePoint:
    """Reference quantities at a single abscissa."""

    x: float
    q: float
    phi: float
    mills: float
    ell: float
    ell_prime: float
    saturated: bool = False


def _check_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x!r}")
    return x


def _square(x: float) -> tuple[float, float]:
    """Return ``(hi, lo)`` with ``hi + lo == x * x`` exactly (Dekker)."""
    hi = x * x
    c = _SPLITTER * x
    xh = c - (c - x)
    xl = x - xh
    lo = ((xh * xh - hi) + 2.0 * xh * xl) + xl * xl
    return hi, lo


def _phi(x: float) -> float:
    ax = abs(x)
    if ax > 40.0:
        # result is subnormal or zero; extra precision is meaningless
        return INV_SQRT_2PI * math.exp(-0.5 * ax * ax)
    hi, lo = _square(ax)
    return INV_SQRT_2PI * math.exp(-0.5 * hi) * (1.0 - 0.5 * lo)


def _log_phi(x: float) -> float:
    ax = abs(x)
    if ax > 1.0e150:
        return -math.inf
    hi, lo = _square(ax)
    return (-0.5 * hi - LOG_SQRT_2PI) - 0.5 * lo


def phi(x: float) -> float:
    """Standard normal density ``exp(-x**2 / 2) / sqrt(2 pi)``."""
    return _phi(_check_finite(x))


# -- series branch -----------------------------------------------------------

def _series_decimal(x: float) -> tuple[Decimal, Decimal]:
    """Return ``(Q(x), phi(x))`` as 40-digit decimals for ``x >= 0``.

    Uses ``Q(x) = 1/2 - phi(x) * sum_n x**(2n+1) / (2n+1)!!``; all terms are
    positive so the sum itself is well conditioned.
    """
    with localcontext(_DEC_CTX):
        xd = Decimal(x)
        x2 = xd * xd
        term = xd
        total = xd
        k = 1
        while term > _DEC_EPS * total:
            k += 2
            term = term * x2 / k
            total += term
        dens = (-x2 / 2).exp() * _DEC_INV_SQRT_2PI
        return _DEC_HALF - dens * total, dens


def q_series(x: float) -> float:
    """Q(x) from the convergent power series, valid for ``0 <= x <= 8``."""
    x = _check_finite(x)
    if not 0.0 <= x <= _SERIES_MAX:
        raise DomainError(f"series branch needs 0 <= x <= {_SERIES_MAX}, got {x!r}")
    return float(_series_decimal(x)[0])


# -- continued fraction branch -----------------------------------------------

def _cf_tail(x: float) -> float:
    """``U(x) = 1/(x + 2/(x + 3/(x + ...)))`` by the modified Lentz method.

    The Mills ratio is ``1 / (x + U(x))``; keeping ``U`` separate lets the log
    derivatives be formed without cancellation.
    """
    f = _CF_TINY
    c = f
    d = 0.0
    for k in range(1, _CF_MAX_TERMS + 1):
        d = x + k * d
        if d == 0.0:
            d = _CF_TINY
        c = x + k / c
        if c == 0.0:
            c = _CF_TINY
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            return f
    raise ArithmeticError(f"continued fraction did not converge at x={x!r}")


def q_continued_fraction(x: float) -> float:
    """Q(x) from the Laplace continued fraction, valid for ``x >= 1``."""
    x = _check_finite(x)
    if x < 1.0:
        raise DomainError(f"continued-fraction branch needs x >= 1, got {x!r}")
    return _phi(x) / (x + _cf_tail(x))


# -- public evaluation -------------------------------------------------------

def reference_point(x: float) -> ReferencePoint:
    """Evaluate Q, phi, Mills ratio, ell and ell' together at ``x``."""
    x = _check_finite(x)
    if x >= SERIES_CUTOFF:
        u = _cf_tail(x)
        s = x + u
        dens = _phi(x)
        q = dens / s
        pt = ReferencePoint(x, q, dens, 1.0 / s, -s, -u * s, q < sys.float_info.min)
    elif x >= 0.0:
        qd, dd = _series_decimal(x)
        with localcontext(_DEC_CTX):
            ld = -dd / qd
            lpd = -ld * (Decimal(x) + ld)
            mills = qd / dd
        pt = ReferencePoint(x, float(qd), float(dd), float(mills), float(ld), float(lpd))
    else:
        q = 1.0 - q_eval(-x)
        dens = _phi(x)
        lv = -dens / q
        pt = ReferencePoint(x, q, dens, q / dens, lv, -lv * (x + lv))
    return pt


def q_eval(x: float) -> float:
    """Gaussian tail probability ``Q(x) = P(Z > x)``.

    Relative error is below 1e-13 wherever the result is a normal double
    (``x`` up to about 37.5). Past that the value degrades into subnormals
    and then 0.0 rather than raising.

    Raises:
        DomainError: if ``x`` is not finite.
    """
    x = _check_finite(x)
    if x >= SERIES_CUTOFF:
        return _phi(x) / (x + _cf_tail(x))
    if x >= 0.0:
        return float(_series_decimal(x)[0])
    return 1.0 - q_eval(-x)


def log_q(x: float) -> float:
    """Natural log of Q(x), accurate in the far tail where Q underflows."""
    x = _check_finite(x)
    if x >= SERIES_CUTOFF:
        return _log_phi(x) - math.log(x + _cf_tail(x))
    if x >= 0.0:
        with localcontext(_DEC_CTX):
            return float(_series_decimal(x)[0].ln())
    return math.log1p(-q_eval(-x))


def mills_ratio(x: float) -> float:
    """Mills ratio ``Q(x) / phi(x)``."""
    return reference_point(x).mills


def ell(x: float) -> float:
    """First derivative of ``log Q``, equal to ``-phi(x) / Q(x)``."""
    return reference_point(x).ell


def ell_prime(x: float) -> float:
    """Second derivative of ``log Q``, ``(phi*Q*x - phi**2) / Q**2``.

    Evaluated as ``-ell * (x + ell)``, which is the same quantity.
    """
    return reference_point(x).ell_prime
