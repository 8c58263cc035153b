"""Log-quadratic tail approximations ``exp(-a x^2 - b x - c)`` and bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import reference
from .errors import DomainError

__all__ = [
    "LN2",
    "SQRT_2_OVER_PI",
    "LogQuadParams",
    "log_quadratic",
    "evaluate",
    "log_evaluate",
    "grad_log",
    "thm1_lower",
    "thm1_upper",
    "chernoff",
    "chernoff_crossover",
    "mitrinovic_upper",
    "mitrinovic_identity_residual",
    "residual_lower",
    "residual_upper",
    "BoundCheck",
    "verification_grid",
    "tail_grid",
    "verify_bounds",
]

LN2 = math.log(2.0)
SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_EIGHT_OVER_PI = 8.0 / math.pi


@dataclass(frozen=True)
class LogQuadParams:
    """Coefficients of ``Qhat(x) = exp(-a*x**2 - b*x - c)``.

    Instances are nonincreasing on ``x >= 0`` and take a value in ``(0, 1]``
    at the origin, so ``a, b, c >= 0`` and ``a``, ``b`` are not both zero.
    Use :func:`log_quadratic` to evaluate coefficients outside that family.
    """

    a: float
    b: float
    c: float
    label: str = ""

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.a < 0.0 or self.b < 0.0:
            raise DomainError(f"need a >= 0 and b >= 0, got a={self.a!r}, b={self.b!r}")
        if self.a == 0.0 and self.b == 0.0:
            raise DomainError("a and b cannot both be zero")
        if self.c < 0.0:
            raise DomainError(f"need c >= 0 so that exp(-c) <= 1, got c={self.c!r}")


def _check_x(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x!r}")
    if x < 0.0:
        raise DomainError(f"x must be >= 0, got {x!r}")
    return x


def log_quadratic(x: float, a: float, b: float, c: float) -> float:
    """Raw ``exp(-a*x**2 - b*x - c)`` with no checks on the coefficients."""
    return math.exp(-a * x * x - b * x - c)


def evaluate(p: LogQuadParams, x: float) -> float:
    x = _check_x(x)
    return log_quadratic(x, p.a, p.b, p.c)


def log_evaluate(p: LogQuadParams, x: float) -> float:
    """``log Qhat(x)`` computed without exponentiating."""
    x = _check_x(x)
    return -p.a * x * x - p.b * x - p.c


def grad_log(p: LogQuadParams, x: float) -> tuple[float, float]:
    """First and second derivative of ``log Qhat`` at ``x``."""
    x = _check_x(x)
    return -2.0 * p.a * x - p.b, -2.0 * p.a


def thm1_lower() -> LogQuadParams:
    """Lower bound ``Q(x) >= exp(-x^2/2 - sqrt(2/pi) x) / 2``."""
    return LogQuadParams(0.5, SQRT_2_OVER_PI, LN2, "thm1-lower")


def thm1_upper() -> LogQuadParams:
    """Upper bound ``Q(x) <= exp(-x^2/pi - sqrt(2/pi) x) / 2``."""
    return LogQuadParams(1.0 / math.pi, SQRT_2_OVER_PI, LN2, "thm1-upper")


def chernoff() -> LogQuadParams:
    """Chernoff bound ``Q(x) <= exp(-x^2/2) / 2``."""
    return LogQuadParams(0.5, 0.0, LN2, "chernoff")


def chernoff_crossover() -> float:
    """Abscissa past which the Chernoff bound is tighter than ``thm1_upper``.

    Solves ``x**2/pi + sqrt(2/pi) x = x**2/2`` for ``x > 0``.
    """
    return SQRT_2_OVER_PI / (0.5 - 1.0 / math.pi)


def _mitrinovic_denominator(x: float) -> float:
    return x + math.sqrt(x * x + _EIGHT_OVER_PI)


def mitrinovic_upper(x: float) -> float:
    """Upper bound ``2 phi(x) / (x + sqrt(x^2 + 8/pi))``."""
    x = _check_x(x)
    return 2.0 * reference.phi(x) / _mitrinovic_denominator(x)


def mitrinovic_identity_residual(x: float) -> float:
    """Left-hand side of the upper residual with the Mitrinovic bound
    substituted for Q. It is identically zero."""
    x = _check_x(x)
    d = _mitrinovic_denominator(x)
    p2 = reference.phi(x) ** 2
    return _EIGHT_OVER_PI * p2 / (d * d) + 2.0 * x * p2 / d - p2


def _residual(pt: reference.ReferencePoint, weight: float) -> float:
    return weight * pt.q * pt.q + pt.q * pt.phi * pt.x - pt.phi * pt.phi


def residual_lower(x: float) -> float:
    """``Q^2 + Q phi x - phi^2``, nonnegative for ``x >= 0``.

    Equivalent to ``ell'(x) >= -1``.
    """
    return _residual(reference.reference_point(_check_x(x)), 1.0)


def residual_upper(x: float) -> float:
    """``(2/pi) Q^2 + Q phi x - phi^2``, nonpositive for ``x >= 0``.

    Equivalent to ``ell'(x) <= -2/pi``.
    """
    return _residual(reference.reference_point(_check_x(x)), 2.0 / math.pi)


# -- grid verification -------------------------------------------------------

BOUND_SLACK = 1e-15
RESIDUAL_SLACK = 1e-16
IDENTITY_SLACK = 1e-14
TAIL_END = 38.0


@dataclass(frozen=True)
class BoundCheck:
    """Outcome of checking one inequality over a grid.

    ``max_violation`` is the largest amount by which the inequality fails,
    clipped at zero. ``max_gap`` is the largest amount by which it holds
    (for bounds, ``|bound - Q|``). ``probe_gap`` is the gap at ``probe_x``.
    Log-domain checks compare ``log`` values instead.
    """

    name: str
    max_violation: float
    violation_x: float
    max_gap: float
    gap_x: float
    probe_x: float
    probe_gap: float
    slack: float
    points: int

    @property
    def ok(self) -> bool:
        return self.max_violation <= self.slack


def verification_grid(x_max: float = 10.0, step: float = 1e-3) -> list[float]:
    """Uniform grid ``0, step, ..., x_max``."""
    if not (x_max > 0.0 and step > 0.0 and math.isfinite(x_max) and math.isfinite(step)):
        raise DomainError(f"need finite x_max > 0 and step > 0, got {x_max!r}, {step!r}")
    n = int(math.floor(x_max / step + 1e-9))
    xs = [i * step for i in range(n + 1)]
    if xs[-1] < x_max:
        xs.append(x_max)
    return xs


def tail_grid(x_start: float = 10.0, x_end: float = TAIL_END, n: int = 200) -> list[float]:
    """Log-spaced points in ``(x_start, x_end]``."""
    if not 0.0 < x_start < x_end:
        return []
    ratio = math.log(x_end / x_start)
    return [x_start * math.exp(ratio * i / n) for i in range(1, n + 1)]


def _check(name, xs, gaps, slack, probe_x):
    # gaps[i] >= 0 means the inequality holds at xs[i]
    worst = min(range(len(xs)), key=lambda i: (gaps[i], xs[i]))
    widest = max(range(len(xs)), key=lambda i: (gaps[i], -xs[i]))
    probe = min(range(len(xs)), key=lambda i: abs(xs[i] - probe_x))
    return BoundCheck(
        name=name,
        max_violation=max(0.0, -gaps[worst]),
        violation_x=xs[worst],
        max_gap=gaps[widest],
        gap_x=xs[widest],
        probe_x=xs[probe],
        probe_gap=gaps[probe],
        slack=slack,
        points=len(xs),
    )


def verify_bounds(
    x_max: float = 10.0,
    step: float = 1e-3,
    tail_end: float = TAIL_END,
    lower: LogQuadParams | None = None,
    upper: LogQuadParams | None = None,
    probe_x: float = 1.0,
) -> list[BoundCheck]:
    """Check every bound and proof residual on the verification grid.

    ``lower`` and ``upper`` replace the two theorem bounds; they exist so
    the falsification path can be exercised.
    """
    lower = lower or thm1_lower()
    upper = upper or thm1_upper()
    ch = chernoff()
    xs = verification_grid(x_max, step)
    pts = [reference.reference_point(x) for x in xs]
    qs = [pt.q for pt in pts]

    checks = [
        _check(lower.label or "lower", xs,
               [q - evaluate(lower, x) for x, q in zip(xs, qs)], BOUND_SLACK, probe_x),
        _check(upper.label or "upper", xs,
               [evaluate(upper, x) - q for x, q in zip(xs, qs)], BOUND_SLACK, probe_x),
        _check("chernoff", xs,
               [evaluate(ch, x) - q for x, q in zip(xs, qs)], BOUND_SLACK, probe_x),
        _check("mitrinovic", xs,
               [mitrinovic_upper(x) - q for x, q in zip(xs, qs)], BOUND_SLACK, probe_x),
        _check("residual-lower", xs,
               [_residual(pt, 1.0) for pt in pts], RESIDUAL_SLACK, probe_x),
        _check("residual-upper", xs,
               [-_residual(pt, 2.0 / math.pi) for pt in pts], RESIDUAL_SLACK, probe_x),
        _check("mitrinovic-identity", xs,
               [-abs(mitrinovic_identity_residual(x)) for x in xs], IDENTITY_SLACK, probe_x),
    ]

    tail = tail_grid(xs[-1], tail_end)
    if tail:
        lq = [reference.log_q(x) for x in tail]
        for p, sign in ((lower, 1.0), (upper, -1.0), (ch, -1.0)):
            gaps = [sign * (v - log_evaluate(p, x)) for x, v in zip(tail, lq)]
            checks.append(_check(f"{p.label or 'bound'} (log tail)", tail, gaps, BOUND_SLACK, tail[0]))
    return checks
