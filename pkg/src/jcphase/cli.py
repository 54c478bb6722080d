"""Command-line front end: classify, negativity, sweep, boundary, verify.

Exit codes: 0 success, 1 invalid input, 2 verification failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys

import numpy as np

from .model import ModelParams, Truncation, auto_truncation
from .ptspec import max_log_negativity
from .regimes import BoundaryKind, boundary_curve, classify
from .sweep import (
    SweepConfig,
    fmt17,
    parse_config_file,
    records_to_csv,
    run_sweep,
    verify_cases,
)


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _cmd_classify(args: argparse.Namespace) -> int:
    if not 0.0 <= args.lam <= 1.0:
        return _fail(f"--lambda must lie in [0, 1], got {args.lam}")
    if not 0.0 <= args.alpha <= 1.0:
        return _fail(f"--alpha must lie in [0, 1], got {args.alpha}")
    result = classify(args.alpha, args.lam)
    payload = {
        "lambda": args.lam,
        "alpha": args.alpha,
        "regime": result.regime.value,
        "cond_immediate": result.cond_immediate,
        "cond_delayed": result.cond_delayed,
        "f_value": result.f_value,
    }
    _write_output(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_negativity(args: argparse.Namespace) -> int:
    if not 0.0 <= args.lam <= 1.0:
        return _fail(f"--lambda must lie in [0, 1], got {args.lam}")
    if not 0.0 <= args.alpha < 1.0:
        return _fail(f"--alpha must lie in [0, 1) for state construction, got {args.alpha}")
    if args.horizon <= 0:
        return _fail(f"--horizon must be positive, got {args.horizon}")
    if args.steps < 100:
        return _fail(f"--steps must be at least 100, got {args.steps}")
    params = ModelParams(lam=args.lam, alpha=args.alpha)
    if args.n_max is not None:
        if args.n_max < 1:
            return _fail(f"--n-max must be at least 1, got {args.n_max}")
        trunc = Truncation(args.n_max, args.tail_eps)
    else:
        trunc = auto_truncation(args.alpha, args.tail_eps)
    series = max_log_negativity(params, trunc, horizon=args.horizon, coarse_steps=args.steps)
    lines = ["t,log_negativity"]
    lines += [f"{fmt17(t)},{fmt17(v)}" for t, v in zip(series.times, series.log_neg)]
    lines.append(
        f"# t_max={fmt17(series.t_max)},value_max={fmt17(series.value_max)},"
        f"tail_bound={fmt17(series.tail_bound)}"
    )
    _write_output("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    try:
        config = parse_config_file(args.config) if args.config else SweepConfig()
        overrides = {}
        if args.horizon is not None:
            overrides["horizon"] = args.horizon
        if args.steps is not None:
            overrides["coarse_steps"] = args.steps
        if args.tail_eps is not None:
            overrides["tail_epsilon"] = args.tail_eps
        if args.jobs is not None:
            overrides["parallelism"] = args.jobs
        if overrides:
            config = dataclasses.replace(config, **overrides)
    except (ValueError, OSError) as exc:
        return _fail(str(exc))
    if config.alpha_max > 0.99:
        print(
            f"warning: alpha_max={config.alpha_max} needs ~{auto_truncation(config.alpha_max, config.tail_epsilon).n_max} "
            "Fock levels per point; expect long runtimes",
            file=sys.stderr,
        )
    records = run_sweep(config)
    _write_output(records_to_csv(records), args.out)
    return 0


def _cmd_boundary(args: argparse.Namespace) -> int:
    if args.steps < 2:
        return _fail(f"--steps must be at least 2, got {args.steps}")
    which = BoundaryKind(args.which)
    grid = np.linspace(0.0, 1.0, args.steps)
    points = boundary_curve(which, grid)
    lines = ["lambda,alpha,which"]
    lines += [f"{fmt17(p.lam)},{fmt17(p.alpha)},{p.which.value}" for p in points]
    _write_output("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.cases < 1:
        return _fail(f"--cases must be at least 1, got {args.cases}")
    ok, lines = verify_cases(args.seed, args.cases)
    _write_output("\n".join(lines) + "\n", args.out)
    return 0 if ok else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jcphase",
        description=(
            "Entanglement dynamics of a mixed two-level system coupled to a "
            "thermal field mode: regime classification, log-negativity scans, "
            "phase-diagram sweeps, boundary curves, and self-verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="regime of a single (lambda, alpha) point as JSON")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("negativity", help="log-negativity time series as CSV")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--horizon", type=float, default=50.0)
    p.add_argument("--steps", type=int, default=2000)
    p.add_argument("--n-max", dest="n_max", type=int, default=None)
    p.add_argument("--tail-eps", dest="tail_eps", type=float, default=1e-10)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_negativity)

    p = sub.add_parser("sweep", help="(lambda, alpha) grid sweep as CSV")
    p.add_argument("--config", default=None, help="flat key = value file")
    p.add_argument("--horizon", type=float, default=None)
    p.add_argument("--steps", type=int, default=None, help="override coarse_steps")
    p.add_argument("--tail-eps", dest="tail_eps", type=float, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("boundary", help="regime boundary points as CSV")
    p.add_argument("--which", choices=[k.value for k in BoundaryKind], required=True)
    p.add_argument("--steps", type=int, default=201, help="lambda grid size")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_boundary)

    p = sub.add_parser("verify", help="cross-check the analytic path against brute force")
    p.add_argument("--seed", type=int, default=1234)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        return _fail(str(exc))


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
