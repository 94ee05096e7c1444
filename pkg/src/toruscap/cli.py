"""Command-line front end.

Exit codes: 0 success, 1 failed hard check or non-convergence, 2 usage or
domain error (diagnostic on stderr).  Numeric output is fixed at 10
significant digits and JSON keys are sorted, so identical invocations
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .optimize import minimize, parity_scan, sweep
from .specfun import IM_FLOOR, NonConvergenceError, SeriesConfig, Tau
from .torus import TorusPoint, bergman_density, capacity, f_ratio, green_function
from .verify import ALL_SUITES, WARN_ONLY_SUITES, run_suite

TOL_ENV_VAR = "TORUSCAP_TOL"


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def _round10(x: float) -> float:
    return float(f"{x:.10g}")


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two numbers, got {text!r}")


def _grid_spec(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected ROWSxCOLS, got {text!r}")
    try:
        rows, cols = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers, got {text!r}")
    return rows, cols


def _series_config(args: argparse.Namespace) -> SeriesConfig:
    tol = args.tol
    if tol is None:
        env = os.environ.get(TOL_ENV_VAR)
        if env is not None:
            try:
                tol = float(env)
            except ValueError:
                raise ValueError(f"invalid {TOL_ENV_VAR} value {env!r}")
        else:
            tol = 1e-14
    return SeriesConfig(tol=tol, max_terms=args.max_terms)


def _cmd_eval(args: argparse.Namespace) -> int:
    cfg = _series_config(args)
    tau = Tau(*args.tau)
    rc = f_ratio(tau, cfg)
    cap = capacity(tau, cfg)
    dens = bergman_density(tau)
    if args.json:
        payload = {
            "tau_re": _round10(tau.re),
            "tau_im": _round10(tau.im),
            "f": _round10(rc.f),
            "log_im_term": _round10(rc.log_im_term),
            "const_term": _round10(rc.const_term),
            "linear_term": _round10(rc.linear_term),
            "qsum_term": _round10(rc.qsum_term),
            "capacity": _round10(cap),
            "bergman_density": _round10(dens),
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"tau = {_fmt(tau.re)} + {_fmt(tau.im)}i")
        print(f"F = {_fmt(rc.f)}")
        print(f"  -2*log(Im tau)       = {_fmt(rc.log_im_term)}")
        print(f"  -log(4*pi)           = {_fmt(rc.const_term)}")
        print(f"  (pi/3)*Im tau        = {_fmt(rc.linear_term)}")
        print(f"  -4*sum log|1-q^(2n)| = {_fmt(rc.qsum_term)}")
        print(f"capacity = {_fmt(cap)}")
        print(f"bergman_density = {_fmt(dens)}")
    return 0


def _cmd_surface(args: argparse.Namespace) -> int:
    cfg = _series_config(args)
    surface = sweep(args.re, args.im, args.rows, args.cols, cfg)
    with open(args.out, "w", newline="") as fh:
        fh.write("re_tau,im_tau,F\n")
        for i, t in enumerate(surface.im_grid):
            for j, r in enumerate(surface.re_grid):
                fh.write(f"{_fmt(r)},{_fmt(t)},{_fmt(surface.values[i, j])}\n")
    print(f"wrote {args.out} ({args.rows}x{args.cols} nodes)")
    if args.plot:
        from .plotting import render_surface

        render_surface(surface, args.plot)
        print(f"wrote {args.plot}")
    return 0


def _cmd_minimize(args: argparse.Namespace) -> int:
    cfg = _series_config(args)
    rows, cols = args.grid
    result = minimize(args.re, args.im, rows, cols, cfg, refine=args.refine)
    g_tau, g_val = result.grid_min
    if args.json:
        payload = {
            "f_min": _round10(result.f_min),
            "exp_f_min": _round10(result.exp_f_min),
            "alpha": _round10(result.alpha),
            "tau_re": _round10(result.tau_star.re),
            "tau_im": _round10(result.tau_star.im),
            "grid_f_min": _round10(g_val),
            "grid_tau_re": _round10(g_tau.re),
            "grid_tau_im": _round10(g_tau.im),
            "refined": result.refined,
            "evaluations": result.evaluations,
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"f_min = {_fmt(result.f_min)}")
        print(f"exp_f_min = {_fmt(result.exp_f_min)}")
        print(f"alpha = {_fmt(result.alpha)}")
        print(
            f"tau_star = {_fmt(result.tau_star.re)} + {_fmt(result.tau_star.im)}i"
            "  (Re is a flat direction)"
        )
        print(f"grid_min = {_fmt(g_val)} at {_fmt(g_tau.re)} + {_fmt(g_tau.im)}i")
        print(f"refined = {'true' if result.refined else 'false'}")
        print(f"evaluations = {result.evaluations}")
    return 0


def _cmd_green(args: argparse.Namespace) -> int:
    cfg = _series_config(args)
    tau = Tau(*args.tau)
    p = TorusPoint(complex(*args.z), tau)
    q = TorusPoint(complex(*args.w), tau)
    print(f"g = {_fmt(green_function(p, q, cfg))}")
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    cfg = _series_config(args)
    suites = ALL_SUITES if args.suite == "all" else (args.suite,)
    rows = []
    for suite in suites:
        for report in run_suite(suite, seed=args.seed, cfg=cfg):
            rows.append((suite, report))
    hard_failures = 0
    if args.json:
        payload = []
        for suite, r in rows:
            payload.append(
                {
                    "suite": suite,
                    "name": r.name,
                    "passed": r.passed,
                    "observed": _round10(r.observed),
                    "expected": _round10(r.expected),
                    "tolerance": _round10(r.tolerance),
                    "detail": r.detail,
                    "hard": suite not in WARN_ONLY_SUITES,
                }
            )
            if not r.passed and suite not in WARN_ONLY_SUITES:
                hard_failures += 1
        print(json.dumps(payload, sort_keys=True))
    else:
        for suite, r in rows:
            if r.passed:
                status = "PASS"
            elif suite in WARN_ONLY_SUITES:
                status = "WARN"
            else:
                status = "FAIL"
                hard_failures += 1
            print(
                f"[{status}] {r.name}: observed={_fmt(r.observed)} "
                f"expected={_fmt(r.expected)} tol={_fmt(r.tolerance)}"
                + (f" ({r.detail})" if r.detail else "")
            )
        passed = sum(1 for _, r in rows if r.passed)
        print(f"{passed}/{len(rows)} checks passed")
    return 1 if hard_failures else 0


def _cmd_parity(args: argparse.Namespace) -> int:
    result = parity_scan(args.x, args.y, args.K, args.M, args.N)
    if result.clamped_rows:
        print(
            f"notice: {result.clamped_rows} mesh row(s) below Im = {IM_FLOOR} "
            f"clamped to the floor",
            file=sys.stderr,
        )
    print(f"f = {_fmt(result.f)}")
    print(f"a = {_fmt(result.tau.re)}")
    print(f"b = {_fmt(result.tau.im)}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        help=f"series truncation tolerance (default 1e-14; env {TOL_ENV_VAR})",
    )
    common.add_argument(
        "--max-terms",
        type=int,
        default=100_000,
        help="hard cap on series/product index (default 100000)",
    )

    parser = argparse.ArgumentParser(
        prog="toruscap",
        description="Green's function, capacity and Bergman ratio on complex tori",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate F, capacity, density at tau")
    p.add_argument("--tau", type=_pair, required=True, metavar="RE,IM")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("surface", parents=[common], help="export an F mesh as CSV")
    p.add_argument("--re", type=_pair, required=True, metavar="A,B")
    p.add_argument("--im", type=_pair, required=True, metavar="C,D")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--plot", default=None, help="also render the surface to this image")
    p.set_defaults(func=_cmd_surface)

    p = sub.add_parser("minimize", parents=[common], help="locate the minimum of F")
    p.add_argument("--re", type=_pair, required=True, metavar="A,B")
    p.add_argument("--im", type=_pair, required=True, metavar="C,D")
    p.add_argument("--grid", type=_grid_spec, required=True, metavar="ROWSxCOLS")
    p.add_argument("--refine", action="store_true", help="simplex-refine the grid minimum")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_minimize)

    p = sub.add_parser("green", parents=[common], help="evaluate g(z, w) on the torus of tau")
    p.add_argument("--tau", type=_pair, required=True, metavar="RE,IM")
    p.add_argument("--z", type=_pair, required=True, metavar="RE,IM")
    p.add_argument("--w", type=_pair, required=True, metavar="RE,IM")
    p.set_defaults(func=_cmd_green)

    p = sub.add_parser("check", parents=[common], help="run the verification battery")
    p.add_argument("--suite", choices=("all",) + ALL_SUITES, default="all")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser(
        "parity",
        parents=[common],
        help="MATLAB-style myplot(x,y,K,M,N) grid scan (fixed-term sums)",
    )
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--M", type=int, default=100)
    p.add_argument("--N", type=int, default=100)
    p.set_defaults(func=_cmd_parity)

    return parser


# options taking RE,IM pairs; their values may start with '-', which argparse
# would otherwise read as a new flag, so fold them into --opt=value form
_PAIR_OPTIONS = frozenset({"--re", "--im", "--tau", "--z", "--w"})


def _fold_pair_flags(argv: list[str]) -> list[str]:
    folded = []
    i = 0
    while i < len(argv):
        if argv[i] in _PAIR_OPTIONS and i + 1 < len(argv):
            folded.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            folded.append(argv[i])
            i += 1
    return folded


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_fold_pair_flags(list(argv)))
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
