"""Exit criteria for the package, one check per criterion.

Run ``pytest tests/test_acceptance.py`` (a PASS/FAIL line per criterion is
printed in the summary) or ``python tests/test_acceptance.py``.
"""

import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402
from oracles import adaptive_simpson, q_quadrature  # noqa: E402
from qlogquad import cli  # noqa: E402
from qlogquad.derivation import T_MIN, a_star, build_approx  # noqa: E402
from qlogquad.logquad import (  # noqa: E402
    LN2,
    LogQuadParams,
    evaluate,
    log_evaluate,
    mitrinovic_identity_residual,
    residual_lower,
    residual_upper,
    tail_grid,
    thm1_lower,
    thm1_upper,
)
from qlogquad.reference import ell, ell_prime, log_q, phi, q_continued_fraction, q_eval, q_series  # noqa: E402
from qlogquad.tuner import optimize_t, sup_abs_error  # noqa: E402

SQ = math.sqrt(2.0 / math.pi)
X_GRID = [i * 1e-3 for i in range(10001)]
TAIL = tail_grid(10.0, 38.0)


def ac1_headline_coefficients():
    d = build_approx(1.295)
    ok = round(d.a_star, 3) == 0.374 and round(d.b_star, 3) == 0.777
    return ok, f"a={d.a_star:.6f} b={d.b_star:.6f}"


def ac2_minimax_error_constant():
    start = time.perf_counter()
    rep = sup_abs_error(build_approx(1.295).params, 10.0, 1e-3)
    elapsed = time.perf_counter() - start
    ok = abs(rep.max_abs_err - 9.485e-4) <= 5e-6 and elapsed < 1.0
    return ok, f"sup err={rep.max_abs_err:.6e} at x={rep.argmax_x:.5f} ({elapsed:.2f}s)"


def ac3_tuner_reproduction():
    res = optimize_t(0.5, 3.0, 1e-4)
    ok = 1.290 <= res.t_opt <= 1.300 and res.report.max_abs_err <= 9.49e-4
    return ok, f"t_opt={res.t_opt:.5f} err={res.report.max_abs_err:.6e}"


def ac4_theorem_sandwich():
    lo, up = thm1_lower(), thm1_upper()
    worst = 0.0
    for x in X_GRID:
        q = q_eval(x)
        worst = max(worst, evaluate(lo, x) - q, q - evaluate(up, x))
    for x in TAIL:
        lq = log_q(x)
        worst = max(worst, log_evaluate(lo, x) - lq, lq - log_evaluate(up, x))
    return worst <= 1e-15, f"max violation={worst:.3e}"


def ac5_proof_residuals():
    res_lo = min(residual_lower(x) for x in X_GRID)
    res_up = max(residual_upper(x) for x in X_GRID)
    ident = max(abs(mitrinovic_identity_residual(x)) for x in X_GRID)
    ok = res_lo >= -1e-16 and res_up <= 1e-16 and ident <= 1e-14
    return ok, f"min lower residual={res_lo:.3e} max upper residual={res_up:.3e} identity={ident:.3e}"


def ac6_oracle_quality():
    worst_q = max(abs(q_eval(x) / q_quadrature(x, rtol=1e-16) - 1.0) for x in (0.5, 1, 2, 3, 5, 8))
    worst_m = max(
        abs(q_series(x) / q_continued_fraction(x) - 1.0) for x in np.linspace(2.5, 3.5, 1000)
    )
    ok = worst_q <= 1e-13 and worst_m <= 1e-13
    return ok, f"vs quadrature rel={worst_q:.3e} method agreement rel={worst_m:.3e}"


def ac7_derivative_matching():
    worst = 0.0
    for t in (0.5, 1.0, 1.295, 2.0):
        i2 = adaptive_simpson(ell_prime, 0.0, t, tol=1e-12)
        i1 = adaptive_simpson(ell, 0.0, t, tol=1e-12)
        worst = max(worst, abs(i2 - (SQ - phi(t) / q_eval(t))), abs(i1 - math.log(2.0 * q_eval(t))))
    return worst <= 1e-10, f"max abs deviation={worst:.3e}"


def ac8_derived_range_and_interpolation():
    ts = np.geomspace(T_MIN, 100.0, 300)
    in_range = all(1.0 / math.pi < a_star(t) < 0.5 for t in ts)
    interp = max(
        abs(evaluate(build_approx(t).params, t) - q_eval(t)) / q_eval(t) for t in (0.5, 1.0, 2.0)
    )
    return in_range and interp <= 1e-10, f"a_star in range={in_range} interp rel={interp:.3e}"


def ac9_literal_coefficients():
    rep = sup_abs_error(LogQuadParams(0.374, 0.777, LN2), 10.0, 1e-3)
    return rep.max_abs_err < 1e-3, f"sup err={rep.max_abs_err:.6e}"


def ac10_profile_determinism(workdir):
    paths = [Path(workdir) / "run1.csv", Path(workdir) / "run2.csv"]
    codes = [cli.main(["profile", "--t", "1.295", "--out", str(p)]) for p in paths]
    same = paths[0].read_bytes() == paths[1].read_bytes()
    return codes == [0, 0] and same, f"exit codes={codes} identical={same}"


CRITERIA = [
    ("AC1 headline coefficients", ac1_headline_coefficients),
    ("AC2 minimax error constant", ac2_minimax_error_constant),
    ("AC3 tuner reproduction", ac3_tuner_reproduction),
    ("AC4 bound sandwich", ac4_theorem_sandwich),
    ("AC5 proof residuals", ac5_proof_residuals),
    ("AC6 oracle quality", ac6_oracle_quality),
    ("AC7 derivative-matching identities", ac7_derivative_matching),
    ("AC8 derived range and interpolation", ac8_derived_range_and_interpolation),
    ("AC9 literal coefficients below 1e-3", ac9_literal_coefficients),
    ("AC10 profile determinism", ac10_profile_determinism),
]


def _run(name, fn, tmp_path):
    ok, detail = fn(tmp_path) if fn is ac10_profile_determinism else fn()
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok, detail


@pytest.mark.parametrize("name, fn", CRITERIA, ids=[n.split()[0] for n, _ in CRITERIA])
def test_criterion(name, fn, tmp_path):
    ok, detail = _run(name, fn, tmp_path)
    assert ok, detail


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as d:
        results = [_run(name, fn, d)[0] for name, fn in CRITERIA]
    sys.exit(0 if all(results) else 1)
