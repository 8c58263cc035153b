"""Command-line front end.

Usage::

    qlogquad bounds                       # verify the bounds on the grid
    qlogquad derive --t 1.295             # closed-form coefficients
    qlogquad tune --t-lo 0.5 --t-hi 3     # minimax search over t
    qlogquad profile --t 1.295 --out p.csv

Exit codes: 0 verified/success, 1 verification failure, 2 usage error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, TextIO

from .derivation import T_MIN, build_approx
from .errors import DomainError
from .logquad import LogQuadParams, chernoff, evaluate, thm1_lower, thm1_upper, verify_bounds
from .tuner import error_profile, optimize_t, sup_abs_error

__all__ = ["RunConfig", "cmd_bounds", "cmd_derive", "cmd_tune", "cmd_profile", "main"]

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3

PROFILE_HEADER = ("x", "q_ref", "q_hat", "err_signed", "lb_thm1", "ub_thm1", "chernoff")


@dataclass
class RunConfig:
    command: str
    t: float | None = None
    x_max: float = 10.0
    step: float = 1e-3
    n: int = 1001
    output_path: Path | None = None
    format: str = "table"
    t_lo: float = 0.5
    t_hi: float = 3.0
    tol: float = 1e-4


def fmt(v: float) -> str:
    """Shortest round-trip decimal for a float."""
    return repr(float(v))


def _emit(rows: list[list[str]], header: list[str], cfg: RunConfig, out: TextIO) -> None:
    if cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(header)]
    out.write("  ".join(h.ljust(wd) for h, wd in zip(header, widths)).rstrip() + "\n")
    for r in rows:
        out.write("  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip() + "\n")


def cmd_bounds(
    cfg: RunConfig,
    out: TextIO | None = None,
    lower: LogQuadParams | None = None,
    upper: LogQuadParams | None = None,
) -> int:
    out = out or sys.stdout
    checks = verify_bounds(cfg.x_max, cfg.step, lower=lower, upper=upper)
    header = ["check", "ok", "max_violation", "violation_x", "max_gap", "gap_x",
              "probe_x", "probe_gap", "points"]
    rows = [
        [c.name, "yes" if c.ok else "NO", fmt(c.max_violation), fmt(c.violation_x),
         fmt(c.max_gap), fmt(c.gap_x), fmt(c.probe_x), fmt(c.probe_gap), str(c.points)]
        for c in checks
    ]
    _emit(rows, header, cfg, out)
    failed = [c for c in checks if not c.ok]
    for c in failed:
        print(f"violation: {c.name} fails by {fmt(c.max_violation)} at x={fmt(c.violation_x)}",
              file=sys.stderr)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_derive(cfg: RunConfig, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    d = build_approx(cfg.t)
    rep = sup_abs_error(d.params, cfg.x_max, cfg.step)
    if cfg.format == "csv":
        _emit([[fmt(d.t), fmt(d.a_star), fmt(d.b_star), fmt(d.params.c),
                fmt(rep.max_abs_err), fmt(rep.argmax_x)]],
              ["t", "a", "b", "c", "max_abs_err", "argmax_x"], cfg, out)
    else:
        out.write(f"t            {d.t:.12g}\n")
        out.write(f"a            {d.a_star:.12g}\n")
        out.write(f"b            {d.b_star:.12g}\n")
        out.write(f"c            {d.params.c:.12g}\n")
        out.write(f"max_abs_err  {rep.max_abs_err:.12g}\n")
        out.write(f"argmax_x     {rep.argmax_x:.12g}\n")
    return EXIT_OK


def cmd_tune(cfg: RunConfig, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    res = optimize_t(cfg.t_lo, cfg.t_hi, cfg.tol, cfg.x_max, cfg.step)
    p = res.derived.params
    fields = [
        ("t_opt", fmt(res.t_opt)),
        ("a", fmt(p.a)),
        ("b", fmt(p.b)),
        ("c", fmt(p.c)),
        ("max_abs_err", fmt(res.report.max_abs_err)),
        ("argmax_x", fmt(res.report.argmax_x)),
        ("trace_length", str(len(res.search_trace))),
        ("final_bracket", fmt(res.brackets[-1][1] - res.brackets[-1][0])),
        ("warning", res.warning or ""),
    ]
    if cfg.format == "csv":
        _emit([[v for _, v in fields]], [k for k, _ in fields], cfg, out)
    else:
        for k, v in fields:
            out.write(f"{k:<14}{v}".rstrip() + "\n")
    return EXIT_OK


def profile_csv(cfg: RunConfig) -> str:
    """Render the error profile for ``cfg.t`` as CSV text."""
    params = build_approx(cfg.t).params
    lb, ub, ch = thm1_lower(), thm1_upper(), chernoff()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PROFILE_HEADER)
    for row in error_profile(params, cfg.x_max, cfg.n):
        w.writerow([fmt(row.x), fmt(row.q), fmt(row.q_hat), fmt(row.err),
                    fmt(evaluate(lb, row.x)), fmt(evaluate(ub, row.x)), fmt(evaluate(ch, row.x))])
    return buf.getvalue()


def cmd_profile(cfg: RunConfig, out: TextIO | None = None) -> int:
    text = profile_csv(cfg)
    if cfg.output_path is None:
        (out or sys.stdout).write(text)
        return EXIT_OK
    try:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {cfg.output_path}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (math.isfinite(v) and v > 0.0):
        raise argparse.ArgumentTypeError(f"must be a positive finite number: {text!r}")
    return v


def _horizon(text: str) -> float:
    v = _positive(text)
    if v < T_MIN:
        raise argparse.ArgumentTypeError(f"t must be >= {T_MIN}, got {text}")
    return v


def _count(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 2:
        raise argparse.ArgumentTypeError("n must be >= 2")
    return v


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # subcommand copies use SUPPRESS so they do not clobber values given earlier
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--x-max", type=_positive, help="upper end of the x grid (default 10)",
                        **(kw or {"default": 10.0}))
    parser.add_argument("--step", type=_positive, help="x grid spacing (default 1e-3)",
                        **(kw or {"default": 1e-3}))
    parser.add_argument("--format", choices=("csv", "table"), help="report format (default table)",
                        **(kw or {"default": "table"}))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlogquad",
        description="Log-quadratic bounds and approximations of the Gaussian Q-function.",
    )
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="verify the bounds and proof residuals on a grid")
    _global_options(p, suppress=True)

    p = sub.add_parser("derive", help="closed-form coefficients for a matching horizon t")
    p.add_argument("--t", type=_horizon, required=True)
    _global_options(p, suppress=True)

    p = sub.add_parser("tune", help="minimax search for the matching horizon")
    p.add_argument("--t-lo", type=_horizon, default=0.5)
    p.add_argument("--t-hi", type=_horizon, default=3.0)
    p.add_argument("--tol", type=_positive, default=1e-4)
    _global_options(p, suppress=True)

    p = sub.add_parser("profile", help="CSV of Q, the approximation and the bounds against x")
    p.add_argument("--t", type=_horizon, required=True)
    p.add_argument("--n", type=_count, default=1001)
    p.add_argument("--out", type=Path, default=None, help="output file (default stdout)")
    _global_options(p, suppress=True)
    return parser


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    return RunConfig(
        command=args.command,
        t=getattr(args, "t", None),
        x_max=args.x_max,
        step=args.step,
        n=getattr(args, "n", 1001),
        output_path=getattr(args, "out", None),
        format=args.format,
        t_lo=getattr(args, "t_lo", 0.5),
        t_hi=getattr(args, "t_hi", 3.0),
        tol=getattr(args, "tol", 1e-4),
    )


_COMMANDS = {"bounds": cmd_bounds, "derive": cmd_derive, "tune": cmd_tune, "profile": cmd_profile}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[cfg.command](cfg)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
