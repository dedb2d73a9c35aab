"""Refinement studies: measure errors on halving grids and estimate orders.

Benchmarks are keyed by table id (``table1`` ... ``table7``) plus generic ids
(``caputo-cos``, ``caputo-log``, ``integral-cos``, ``integral-log``,
``relaxation``, ``subdiffusion``) that take any ``alpha`` and scheme.

How errors are measured:

* derivative studies: ``|approx - exact|`` at ``x = 1``;
* integral studies: ``Gamma(2-alpha) |approx - exact|`` at ``x = 1``, i.e. the
  error of the Gamma-scaled sum, which is the scale the published tables use;
* relaxation: maximum over all grid times in ``[0, 1]``;
* subdiffusion: maximum over the spatial grid at ``t = 1``.
"""

from __future__ import annotations

import io
import math
import os
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np

from .caputo import SampledFunction, SchemeKind, caputo
from .integral import frac_integral_2ma
from .oracles import as_callable, caputo_series_oracle, frac_integral_oracle
from .relaxation import benchmark_relaxation_problem, relaxation_exact_reference, solve_relaxation
from .special import gamma
from .subdiffusion import (
    benchmark_subdiffusion_exact,
    benchmark_subdiffusion_problem,
    benchmark_subdiffusion_ut0,
    solve_subdiffusion,
)

__all__ = [
    "BENCHMARKS",
    "Benchmark",
    "ConvergenceReport",
    "ConvergenceRow",
    "TABLE_STEPS",
    "estimate_order",
    "max_error",
    "reproduce_table",
    "run_study",
]

#: Step sizes printed in the published tables.
TABLE_STEPS = (0.05, 0.025, 0.0125, 0.00625, 0.003125)

#: Extra coarse step so the first published row also gets an order.
LEAD_IN_STEP = 0.1

COUPLINGS = ("fixed-x", "tau=h", "tau=h/2")


@dataclass(frozen=True)
class Benchmark:
    id: str
    kind: str  # caputo | integral | relaxation | subdiffusion
    alpha: float
    schemes: tuple[SchemeKind, ...]
    coupling: str | None = None
    function: str | None = None
    first_layer: str = "implicit"


_L1, _L1Z = SchemeKind.L1, SchemeKind.L1Z

BENCHMARKS: dict[str, Benchmark] = {
    b.id: b
    for b in (
        Benchmark("table1", "caputo", 0.6, (_L1,), "fixed-x", "cos"),
        Benchmark("table2-cos", "integral", 0.4, (), "fixed-x", "cos"),
        Benchmark("table2-log", "integral", 0.4, (), "fixed-x", "log1p"),
        Benchmark("table3-cos", "caputo", 0.25, (_L1Z,), "fixed-x", "cos"),
        Benchmark("table3-log", "caputo", 0.25, (_L1Z,), "fixed-x", "log1p"),
        Benchmark("table4", "relaxation", 0.8, (_L1, _L1Z)),
        Benchmark("table5", "subdiffusion", 0.6, (_L1, _L1Z), "tau=h"),
        Benchmark("table6", "subdiffusion", 0.4, (_L1, _L1Z), "tau=h/2"),
        Benchmark("table7", "subdiffusion", 0.6, (_L1, _L1Z), "tau=h", first_layer="taylor"),
        Benchmark("caputo-cos", "caputo", 0.5, (_L1, _L1Z), "fixed-x", "cos"),
        Benchmark("caputo-log", "caputo", 0.5, (_L1, _L1Z), "fixed-x", "log1p"),
        Benchmark("integral-cos", "integral", 0.5, (), "fixed-x", "cos"),
        Benchmark("integral-log", "integral", 0.5, (), "fixed-x", "log1p"),
        Benchmark("relaxation", "relaxation", 0.5, (_L1, _L1Z)),
        Benchmark("subdiffusion", "subdiffusion", 0.5, (_L1, _L1Z), "tau=h"),
    )
}


@dataclass(frozen=True)
class ConvergenceRow:
    h: float
    tau: float | None
    max_error: float
    ratio: float | None
    order: float | None


@dataclass
class ConvergenceReport:
    """Rows sorted by decreasing ``h``; the first row has no ratio or order."""

    rows: list[ConvergenceRow]
    benchmark: str
    scheme: str
    alpha: float
    coupling: str | None = None
    meta: dict = field(default_factory=dict)

    @property
    def errors(self) -> list[float]:
        return [r.max_error for r in self.rows]

    @property
    def orders(self) -> list[float | None]:
        return [r.order for r in self.rows]

    def row(self, h: float) -> ConvergenceRow:
        for r in self.rows:
            if math.isclose(r.h, h, rel_tol=1e-12):
                return r
        raise KeyError(h)

    def to_csv(self, out: TextIO | None = None, header_comments: bool = True) -> str:
        buf = io.StringIO()
        if header_comments:
            buf.write(f"# benchmark={self.benchmark} scheme={self.scheme} alpha={_fmt(self.alpha)}")
            if self.coupling:
                buf.write(f" coupling={self.coupling}")
            for key, value in self.meta.items():
                buf.write(f" {key}={value}")
            buf.write("\n")
        buf.write("h,tau,error,ratio,order\n")
        for r in self.rows:
            buf.write(",".join(_fmt(v) for v in (r.h, r.tau, r.max_error, r.ratio, r.order)) + "\n")
        text = buf.getvalue()
        if out is not None:
            out.write(text)
        return text

    def to_text(self) -> str:
        lines = [f"{self.benchmark}  scheme={self.scheme}  alpha={self.alpha:g}"]
        if self.coupling:
            lines[0] += f"  coupling={self.coupling}"
        lines.append(f"{'h':>10} {'tau':>10} {'error':>14} {'ratio':>9} {'order':>9}")
        for r in self.rows:
            lines.append(
                f"{r.h:>10.6g} {_opt(r.tau, '10.6g')} {r.max_error:>14.6e} "
                f"{_opt(r.ratio, '9.5f')} {_opt(r.order, '9.5f')}"
            )
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    return "" if v is None else format(float(v), ".17g")


def _opt(v, spec: str) -> str:
    width = int(spec.split(".")[0])
    return " " * width if v is None else format(v, ">" + spec)


def max_error(approx: Sequence[float], exact: Sequence[float]) -> float:
    """Maximum absolute difference between two equally long sequences."""
    a = np.asarray(approx, dtype=float)
    b = np.asarray(exact, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def estimate_order(e_coarse: float, e_fine: float) -> float:
    """Observed order ``log2(e_coarse / e_fine)`` for a halving of the step."""
    if not (e_coarse > 0 and e_fine > 0):
        raise ValueError("errors must be positive to estimate an order")
    return math.log2(e_coarse / e_fine)


def _steps(h: float, length: float = 1.0) -> int:
    n = round(length / h)
    if abs(n * h - length) > 1e-9 * length:
        raise ValueError(f"h = {h!r} does not divide the interval")
    return n


def _tau(h: float, coupling: str | None) -> float | None:
    if coupling == "tau=h":
        return h
    if coupling == "tau=h/2":
        return h / 2.0
    return None


def _row_error(bench: Benchmark, scheme: SchemeKind | None, alpha: float, h: float, coupling: str | None) -> float:
    if bench.kind == "caputo":
        y = SampledFunction.sample(as_callable(bench.function), 1.0, _steps(h))
        return abs(caputo(y, alpha, scheme) - caputo_series_oracle(bench.function, alpha, 1.0))
    if bench.kind == "integral":
        y = SampledFunction.sample(as_callable(bench.function), 1.0, _steps(h))
        diff = frac_integral_2ma(y, alpha) - frac_integral_oracle(bench.function, alpha, 1.0)
        return gamma(2.0 - alpha) * abs(diff)
    if bench.kind == "relaxation":
        sol = solve_relaxation(benchmark_relaxation_problem(alpha, _steps(h)), scheme)
        return max_error(sol.values, relaxation_exact_reference(sol.times))
    if bench.kind == "subdiffusion":
        tau = _tau(h, coupling)
        p = benchmark_subdiffusion_problem(alpha, _steps(h), _steps(tau))
        hist = solve_subdiffusion(p, scheme, bench.first_layer, ut0=benchmark_subdiffusion_ut0)
        return max_error(hist.final, benchmark_subdiffusion_exact(p.x, p.T))
    raise ValueError(f"unknown benchmark kind {bench.kind!r}")


def _threads() -> int:
    raw = os.environ.get("FRACDIFF_THREADS", "").strip()
    if not raw:
        return 0
    try:
        return max(0, int(raw))
    except ValueError:
        raise ValueError(f"FRACDIFF_THREADS must be an integer, got {raw!r}") from None


def run_study(
    benchmark: str,
    scheme: SchemeKind | str | None = None,
    alpha: float | None = None,
    h_list: Sequence[float] = TABLE_STEPS,
    coupling: str | None = None,
    threads: int | None = None,
) -> ConvergenceReport:
    """Run one refinement study over a halving sequence of steps.

    ``scheme``, ``alpha`` and ``coupling`` default to the benchmark's own.
    Rows are independent; with ``threads > 1`` (or ``FRACDIFF_THREADS``) they
    are computed concurrently, which does not change any value.
    """
    try:
        bench = BENCHMARKS[benchmark]
    except KeyError:
        raise ValueError(f"unknown benchmark {benchmark!r}; known: {', '.join(BENCHMARKS)}") from None
    alpha = bench.alpha if alpha is None else float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    if bench.kind == "integral":
        kind = None
    else:
        kind = SchemeKind.parse(scheme) if scheme is not None else bench.schemes[0]
    coupling = coupling if coupling is not None else bench.coupling
    if bench.kind == "subdiffusion" and coupling not in ("tau=h", "tau=h/2"):
        raise ValueError(f"subdiffusion studies need coupling 'tau=h' or 'tau=h/2', got {coupling!r}")

    hs = [float(h) for h in h_list]
    if not hs:
        raise ValueError("h_list is empty")
    for a, b in zip(hs, hs[1:]):
        if not math.isclose(a, 2.0 * b, rel_tol=1e-12):
            raise ValueError("h_list must be a halving sequence")

    workers = _threads() if threads is None else threads
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            errors = list(pool.map(lambda h: _row_error(bench, kind, alpha, h, coupling), hs))
    else:
        errors = [_row_error(bench, kind, alpha, h, coupling) for h in hs]

    rows = []
    for i, (h, err) in enumerate(zip(hs, errors)):
        ratio = order = None
        if i > 0:
            ratio = errors[i - 1] / err
            order = estimate_order(errors[i - 1], err)
        rows.append(ConvergenceRow(h, _tau(h, coupling), err, ratio, order))
    meta = {"first_layer": bench.first_layer} if bench.kind == "subdiffusion" else {}
    return ConvergenceReport(
        rows,
        benchmark=bench.id,
        scheme=kind.value if kind is not None else "a3",
        alpha=alpha,
        coupling=coupling,
        meta=meta,
    )


def reproduce_table(table_id: str, threads: int | None = None) -> list[ConvergenceReport]:
    """One report per scheme for a published table.

    The studies start one step coarser than the table (``h = 0.1``) so that
    every printed row, including the first, carries an order.
    """
    if not table_id.startswith("table") or table_id not in BENCHMARKS:
        raise ValueError(f"unknown table {table_id!r}")
    bench = BENCHMARKS[table_id]
    steps = (LEAD_IN_STEP, *TABLE_STEPS)
    schemes = bench.schemes or (None,)
    return [run_study(table_id, s, h_list=steps, threads=threads) for s in schemes]
