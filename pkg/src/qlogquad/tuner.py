"""Minimax error of log-quadratic approximations and the search over ``t``."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, NamedTuple

from . import reference
from .derivation import T_MIN, DerivedParams, build_approx
from .errors import DomainError
from .logquad import LogQuadParams, log_quadratic

__all__ = [
    "GridSpec",
    "ErrorReport",
    "TuneResult",
    "ProfileRow",
    "golden_section",
    "sup_abs_error",
    "optimize_t",
    "error_profile",
]

log = logging.getLogger(__name__)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
# Only grid maxima at least this fraction of the largest are refined.
_REFINE_FRACTION = 0.5
# Values below this at x_max certify that no maximizer lies beyond it.
_TAIL_LEVEL = 1e-8


class GridSpec(NamedTuple):
    x_max: float
    step: float
    refinement_tol: float


@dataclass(frozen=True)
class ErrorReport:
    """Supremum of ``|Q - Qhat|`` on ``[0, x_max]``.

    ``tail_bound`` is ``max(Q(x_max), Qhat(x_max))``. Both functions are
    positive and decreasing, so it bounds the error on ``[x_max, inf)``.
    ``tail_certified`` is set when that bound is below both
    ``max_abs_err`` and 1e-8.
    """

    max_abs_err: float
    argmax_x: float
    grid_spec: GridSpec
    params: LogQuadParams
    tail_bound: float
    tail_certified: bool


@dataclass(frozen=True)
class TuneResult:
    t_opt: float
    report: ErrorReport
    derived: DerivedParams
    search_trace: list[tuple[float, float]] = field(default_factory=list)
    brackets: list[tuple[float, float]] = field(default_factory=list)
    warning: str | None = None


class ProfileRow(NamedTuple):
    x: float
    q: float
    q_hat: float
    err: float


def golden_section(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
    max_iter: int = 200,
) -> tuple[float, float, list[tuple[float, float]]]:
    """Minimize a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(x, f(x), brackets)`` where ``x`` is the best point evaluated and
    ``brackets`` holds the successive ``(lo, hi)`` intervals.
    """
    brackets = [(lo, hi)]
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    best = min((f1, x1), (f2, x2))
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_PHI * (hi - lo)
            f1 = f(x1)
            best = min(best, (f1, x1))
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_PHI * (hi - lo)
            f2 = f(x2)
            best = min(best, (f2, x2))
        brackets.append((lo, hi))
    return best[1], best[0], brackets


def _grid(x_max: float, step: float) -> list[float]:
    n = int(math.floor(x_max / step + 1e-9))
    xs = [i * step for i in range(n + 1)]
    if xs[-1] < x_max:
        xs.append(x_max)
    else:
        xs[-1] = min(xs[-1], x_max)
    return xs


@lru_cache(maxsize=32)
def _reference_grid(x_max: float, step: float) -> tuple[tuple[float, ...], tuple[float, ...]]:
    xs = _grid(x_max, step)
    return tuple(xs), tuple(reference.q_eval(x) for x in xs)


def _validate_grid(x_max: float, step: float) -> None:
    if not (math.isfinite(x_max) and math.isfinite(step)):
        raise DomainError("x_max and step must be finite")
    if x_max <= 0.0 or step <= 0.0:
        raise DomainError(f"need x_max > 0 and step > 0, got {x_max!r}, {step!r}")
    if step > x_max / 100.0:
        raise DomainError(f"step must be <= x_max/100, got step={step!r} for x_max={x_max!r}")


def sup_abs_error(
    params: LogQuadParams,
    x_max: float = 10.0,
    step: float = 1e-3,
    refinement_tol: float = 1e-6,
) -> ErrorReport:
    """Locate ``max |Q(x) - Qhat(x)|`` for ``0 <= x <= x_max``.

    A uniform scan brackets each local maximum; every bracket whose grid error
    is within a factor two of the largest is refined by golden-section search
    to ``refinement_tol`` in ``x``.
    """
    x_max, step = float(x_max), float(step)
    _validate_grid(x_max, step)
    if not refinement_tol > 0.0:
        raise DomainError("refinement_tol must be > 0")
    a, b, c = params.a, params.b, params.c

    def err(x: float) -> float:
        return abs(reference.q_eval(x) - log_quadratic(x, a, b, c))

    xs, qs = _reference_grid(x_max, step)
    errs = [abs(q - log_quadratic(x, a, b, c)) for x, q in zip(xs, qs)]
    top = max(errs)
    best_err, best_x = top, xs[errs.index(top)]
    last = len(xs) - 1
    for i, e in enumerate(errs):
        if e < _REFINE_FRACTION * top:
            continue
        if (i > 0 and errs[i - 1] > e) or (i < last and errs[i + 1] > e):
            continue
        lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, last)]
        x_ref, neg, _ = golden_section(lambda x: -err(x), lo, hi, refinement_tol)
        if -neg > best_err:
            best_err, best_x = -neg, x_ref

    tail = max(qs[-1], log_quadratic(x_max, a, b, c))
    return ErrorReport(
        max_abs_err=best_err,
        argmax_x=best_x,
        grid_spec=GridSpec(x_max, step, refinement_tol),
        params=params,
        tail_bound=tail,
        tail_certified=tail < _TAIL_LEVEL and tail < best_err,
    )


def _count_local_minima(values: list[float]) -> int:
    n = len(values)
    count = 0
    for i, v in enumerate(values):
        left = values[i - 1] if i > 0 else math.inf
        right = values[i + 1] if i < n - 1 else math.inf
        if v < left and v < right:
            count += 1
    return count


def optimize_t(
    t_lo: float = 0.5,
    t_hi: float = 3.0,
    tol_t: float = 1e-4,
    x_max: float = 10.0,
    step: float = 1e-3,
    prescan: int = 50,
) -> TuneResult:
    """Choose the horizon ``t`` minimizing the sup error of ``build_approx(t)``.

    A uniform pre-scan of ``prescan`` points checks that the objective looks
    unimodal. If it shows several local minima, the golden-section search is
    restricted to the neighbours of the best pre-scan point and ``warning`` is
    set on the result.
    """
    t_lo, t_hi = float(t_lo), float(t_hi)
    if not (math.isfinite(t_lo) and math.isfinite(t_hi)):
        raise DomainError("search window must be finite")
    if t_lo < T_MIN:
        raise DomainError(f"t_lo must be >= {T_MIN}, got {t_lo!r}")
    if t_lo >= t_hi:
        raise DomainError(f"need t_lo < t_hi, got [{t_lo!r}, {t_hi!r}]")
    if not tol_t > 0.0:
        raise DomainError("tol_t must be > 0")
    if prescan < 3:
        raise DomainError("prescan needs at least 3 points")
    _validate_grid(x_max, step)

    trace: list[tuple[float, float]] = []
    reports: dict[float, ErrorReport] = {}

    def objective(t: float) -> float:
        rep = reports.get(t)
        if rep is None:
            rep = sup_abs_error(build_approx(t).params, x_max, step)
            reports[t] = rep
        trace.append((t, rep.max_abs_err))
        return rep.max_abs_err

    ts = [t_lo + (t_hi - t_lo) * i / (prescan - 1) for i in range(prescan)]
    scan = [objective(t) for t in ts]
    lo, hi = t_lo, t_hi
    warning = None
    if _count_local_minima(scan) > 1:
        i = scan.index(min(scan))
        lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, prescan - 1)]
        warning = f"pre-scan found multiple local minima; searching [{lo!r}, {hi!r}]"
        log.warning(warning)

    _, _, brackets = golden_section(objective, lo, hi, tol_t)
    t_opt, _ = min(trace, key=lambda pair: (pair[1], pair[0]))
    return TuneResult(
        t_opt=t_opt,
        report=reports[t_opt],
        derived=build_approx(t_opt),
        search_trace=trace,
        brackets=brackets,
        warning=warning,
    )


def error_profile(params: LogQuadParams, x_max: float = 10.0, n: int = 1001) -> list[ProfileRow]:
    """Sample ``Q``, ``Qhat`` and the signed error ``Q - Qhat`` at ``n``
    evenly spaced points of ``[0, x_max]``."""
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    x_max = float(x_max)
    if not math.isfinite(x_max) or x_max <= 0.0:
        raise DomainError(f"x_max must be finite and > 0, got {x_max!r}")
    n = int(n)
    rows = []
    for i in range(n):
        x = x_max * i / (n - 1)
        q = reference.q_eval(x)
        q_hat = log_quadratic(x, params.a, params.b, params.c)
        rows.append(ProfileRow(x, q, q_hat, q - q_hat))
    return rows
