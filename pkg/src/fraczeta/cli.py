"""Command-line front end.

Exit status: 0 on success, 2 on bad arguments, 1 on numerical failure
(series non-convergence, pivot breakdown).
"""

from __future__ import annotations

import argparse
import contextlib
import math
import sys
from collections.abc import Sequence

import numpy as np

from .caputo import SampledFunction, caputo, coefficients
from .convergence import BENCHMARKS, reproduce_table
from .errors import NumericalError
from .integral import frac_integral_2ma
from .oracles import as_callable, caputo_series_oracle, frac_integral_oracle
from .relaxation import benchmark_relaxation_problem, relaxation_exact_reference, solve_relaxation
from .subdiffusion import (
    benchmark_subdiffusion_exact,
    benchmark_subdiffusion_problem,
    benchmark_subdiffusion_ut0,
    solve_subdiffusion,
    write_field_csv,
)

TABLE_IDS = [k for k in BENCHMARKS if k.startswith("table")]


def _fmt(v) -> str:
    return format(float(v), ".17g")


def _alpha(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("alpha must lie strictly between 0 and 1")
    return value


def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError("must be a positive number")
    return value


def _int_at_least(lo: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if value < lo:
            raise argparse.ArgumentTypeError(f"must be at least {lo}")
        return value

    return parse


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", choices=("pretty", "csv"), default="pretty", help="output format (default: pretty)")
    p.add_argument("--out", dest="out_path", metavar="PATH", help="write to PATH instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fraczeta",
        description="L1 and zeta-corrected Caputo derivative schemes, fractional integral "
        "approximation, relaxation and subdiffusion solvers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="dump scheme weights w_0..w_n (dimensionless)")
    p.add_argument("--scheme", choices=("l1", "l1z"), default="l1z", help="weight family (default: l1z)")
    p.add_argument("--alpha", type=_alpha, required=True, help="derivative order in (0, 1)")
    p.add_argument("--n", type=_int_at_least(1), required=True, help="number of steps n (l1z needs n >= 2)")
    _common(p)

    for name, what in (("caputo", "Caputo derivative"), ("integral", "fractional integral of order 2-alpha")):
        p = sub.add_parser(name, help=f"approximate the {what} of a test function at x")
        p.add_argument("--function", choices=("cos", "log1p"), default="cos", help="test function (default: cos)")
        p.add_argument("--alpha", type=_alpha, required=True, help="order parameter in (0, 1)")
        p.add_argument("--x", type=_positive, default=1.0, help="evaluation point, grid starts at 0 (default: 1)")
        p.add_argument("--n", type=_int_at_least(2), default=20, help="number of steps on [0, x]; h = x/n (default: 20)")
        if name == "caputo":
            p.add_argument("--scheme", choices=("l1", "l1z"), default="l1z", help="weight family (default: l1z)")
        _common(p)

    p = sub.add_parser("relaxation", help="solve y^(alpha) + y = F(t) on [0, 1] (benchmark with exact 1-4t+5t^2)")
    p.add_argument("--alpha", type=_alpha, required=True, help="derivative order in (0, 1)")
    p.add_argument("--n", type=_int_at_least(2), default=20, help="time steps on [0, 1]; h = 1/n (default: 20)")
    p.add_argument("--scheme", choices=("l1", "l1z"), default="l1z", help="weight family (default: l1z)")
    p.add_argument("--benchmark", choices=("paper",), default="paper", help="problem definition (default: paper)")
    _common(p)

    p = sub.add_parser("subdiffusion", help="solve the time-fractional subdiffusion benchmark on [0,1]x[0,1]")
    p.add_argument("--alpha", type=_alpha, required=True, help="derivative order in (0, 1)")
    p.add_argument("--n", type=_int_at_least(3), default=20, help="spatial intervals; h = 1/n (default: 20)")
    p.add_argument("--m", type=_int_at_least(2), default=20, help="time steps; tau = 1/m (default: 20)")
    p.add_argument("--scheme", choices=("l1", "l1z"), default="l1z", help="weight family (default: l1z)")
    p.add_argument("--benchmark", choices=("paper",), default="paper", help="problem definition (default: paper)")
    p.add_argument("--first-layer", choices=("implicit", "taylor"), default="implicit",
                   help="how the layer t = tau is computed (default: implicit)")
    p.add_argument("--layers", choices=("final", "all"), default="final",
                   help="CSV: emit only the t = 1 layer or every layer (default: final)")
    _common(p)

    p = sub.add_parser("tables", help="reproduce a published convergence table")
    p.add_argument("--id", dest="table_id", choices=TABLE_IDS, required=True, help="table id")
    _common(p)
    return parser


def _coeffs(args) -> str:
    if args.scheme == "l1z" and args.n < 2:
        raise _ArgError("l1z weights need --n >= 2")
    w = coefficients(args.scheme, args.alpha, args.n).weights
    if args.output == "csv":
        return "k,weight\n" + "".join(f"{k},{_fmt(v)}\n" for k, v in enumerate(w))
    lines = [f"{args.scheme} weights, alpha={args.alpha:g}, n={args.n}"]
    lines += [f"{k:>6d}  {v: .17g}" for k, v in enumerate(w)]
    lines.append(f"   sum  {math.fsum(w): .3e}")
    return "\n".join(lines) + "\n"


def _point(args) -> str:
    y = SampledFunction.sample(as_callable(args.function), args.x, args.n)
    if args.command == "caputo":
        approx = caputo(y, args.alpha, args.scheme)
        exact = caputo_series_oracle(args.function, args.alpha, args.x)
    else:
        approx = frac_integral_2ma(y, args.alpha)
        exact = frac_integral_oracle(args.function, args.alpha, args.x)
    err = abs(approx - exact)
    if args.output == "csv":
        return "x,h,approx,exact,error\n" + ",".join(_fmt(v) for v in (args.x, y.h, approx, exact, err)) + "\n"
    return (
        f"{args.command} of {args.function} at x={args.x:g}, alpha={args.alpha:g}, h={y.h:g}\n"
        f"  approx {approx: .15e}\n  exact  {exact: .15e}\n  error  {err: .3e}\n"
    )


def _relaxation(args) -> str:
    sol = solve_relaxation(benchmark_relaxation_problem(args.alpha, args.n), args.scheme)
    exact = relaxation_exact_reference(sol.times)
    err = np.abs(sol.values - exact)
    if args.output == "csv":
        rows = ("".join(",".join(_fmt(v) for v in row) + "\n") for row in zip(sol.times, sol.values, exact, err))
        return "t,approx,exact,error\n" + "".join(rows)
    return (
        f"relaxation, scheme={args.scheme}, alpha={args.alpha:g}, h={sol.h:g}\n"
        f"  y(1) approx {sol.values[-1]: .15e}\n  max error   {err.max(): .3e}\n"
    )


def _subdiffusion(args) -> str:
    p = benchmark_subdiffusion_problem(args.alpha, args.n, args.m)
    hist = solve_subdiffusion(p, args.scheme, args.first_layer, ut0=benchmark_subdiffusion_ut0)
    if args.output == "csv":
        return write_field_csv(hist, layers=args.layers)
    err = np.max(np.abs(hist.final - benchmark_subdiffusion_exact(p.x, p.T)))
    return (
        f"subdiffusion, scheme={args.scheme}, alpha={args.alpha:g}, h={p.h:g}, tau={p.tau:g}, "
        f"first layer={args.first_layer}\n  eta {p.eta:.6g}\n  max error at t=1  {err: .3e}\n"
    )


def _tables(args) -> str:
    reports = reproduce_table(args.table_id)
    if args.output == "csv":
        return "".join(r.to_csv() for r in reports)
    return "\n".join(r.to_text() for r in reports)


class _ArgError(Exception):
    pass


_HANDLERS = {
    "coeffs": _coeffs,
    "caputo": _point,
    "integral": _point,
    "relaxation": _relaxation,
    "subdiffusion": _subdiffusion,
    "tables": _tables,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        text = _HANDLERS[args.command](args)
    except (_ArgError, ValueError) as exc:
        print(f"fraczeta {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"fraczeta {args.command}: numerical failure: {exc}", file=sys.stderr)
        return 1

    if args.out_path:
        try:
            with open(args.out_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"fraczeta: cannot write {args.out_path}: {exc}", file=sys.stderr)
            return 2
    else:
        with contextlib.suppress(BrokenPipeError):
            sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
