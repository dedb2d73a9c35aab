"""Implicit solvers for the 1-D time-fractional subdiffusion equation

.. math::

    \\partial_t^\\alpha u = \\partial_x^2 u + F(x, t), \\qquad (x, t) \\in [0, L] \\times [0, T].

Each time layer ``m >= 2`` solves a tridiagonal system with diagonal
``w_0 + 2 eta``, off-diagonals ``-eta`` and right-hand side
``-sum_{k=1}^m w_k U^{m-k} + Gamma(2-alpha) tau^alpha F^m`` plus boundary terms,
where ``eta = Gamma(2-alpha) tau^alpha / h^2``. The zeta-corrected weights give
the L1Z system (``w_0 = 1 - zeta(alpha-1)``), the L1 weights the plain one.

The first layer comes either from the implicit two-point step
(``first_layer="implicit"``) or from a Taylor step ``u0 + tau * u_t(x, 0)``
(``first_layer="taylor"``, caller supplies ``u_t(x, 0)``).
"""

from __future__ import annotations

import io
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np

from .caputo import SchemeKind, coefficients
from .errors import PivotBreakdownError
from .special import gamma

__all__ = [
    "FieldHistory",
    "SubdiffusionProblem",
    "TridiagonalSystem",
    "benchmark_subdiffusion_exact",
    "benchmark_subdiffusion_problem",
    "benchmark_subdiffusion_ut0",
    "first_layer_implicit",
    "first_layer_taylor",
    "solve_subdiffusion",
    "thomas_solve",
    "write_field_csv",
]

PIVOT_TOL = 1e-14


@dataclass(frozen=True)
class TridiagonalSystem:
    """``A x = rhs`` with ``A`` given by its three diagonals."""

    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        for name in ("lower", "diag", "upper", "rhs"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        m = self.diag.size
        if self.rhs.size != m or self.lower.size != m - 1 or self.upper.size != m - 1:
            raise ValueError("inconsistent diagonal lengths")

    @property
    def size(self) -> int:
        return self.diag.size

    def matvec(self, x: np.ndarray) -> np.ndarray:
        out = self.diag * x
        out[1:] += self.lower * x[:-1]
        out[:-1] += self.upper * x[1:]
        return out

    def is_diagonally_dominant(self, strict: bool = False) -> bool:
        off = np.zeros(self.size)
        off[1:] += np.abs(self.lower)
        off[:-1] += np.abs(self.upper)
        d = np.abs(self.diag)
        return bool(np.all(d > off) if strict else np.all(d >= off))


def thomas_solve(sys: TridiagonalSystem) -> np.ndarray:
    """Solve a tridiagonal system by forward elimination and back substitution.

    No pivoting; intended for diagonally dominant systems. Raises
    :class:`PivotBreakdownError` if a pivot drops below 1e-14 in magnitude.
    """
    a, b, c, d = sys.lower, sys.diag, sys.upper, sys.rhs
    m = b.size
    cp = np.empty(max(m - 1, 0))
    dp = np.empty(m)

    piv = b[0]
    if abs(piv) < PIVOT_TOL:
        raise PivotBreakdownError("zero pivot in row 0")
    if m > 1:
        cp[0] = c[0] / piv
    dp[0] = d[0] / piv
    for i in range(1, m):
        piv = b[i] - a[i - 1] * cp[i - 1]
        if abs(piv) < PIVOT_TOL:
            raise PivotBreakdownError(f"zero pivot in row {i}")
        if i < m - 1:
            cp[i] = c[i] / piv
        dp[i] = (d[i] - a[i - 1] * dp[i - 1]) / piv

    x = np.empty(m)
    x[-1] = dp[-1]
    for i in range(m - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x


@dataclass(frozen=True)
class SubdiffusionProblem:
    """Data of ``d^a u/dt^a = u_xx + F`` on ``[0, L] x [0, T]``.

    ``u0`` and ``forcing`` are called with numpy arrays of ``x`` and must
    broadcast; ``uL`` and ``uR`` take a scalar time.
    """

    alpha: float
    u0: Callable[[np.ndarray], np.ndarray]
    uL: Callable[[float], float]
    uR: Callable[[float], float]
    forcing: Callable[[np.ndarray, float], np.ndarray]
    N: int
    M: int
    T: float = 1.0
    L: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if self.N < 3:
            raise ValueError("need at least N = 3 spatial intervals")
        if self.M < 2:
            raise ValueError("need at least M = 2 time steps")
        if not (self.T > 0 and self.L > 0):
            raise ValueError("T and L must be positive")
        ends = np.asarray(self.u0(np.array([0.0, self.L])), dtype=float)
        if abs(ends[0] - self.uL(0.0)) > 1e-10 or abs(ends[1] - self.uR(0.0)) > 1e-10:
            raise ValueError("initial and boundary data disagree at t = 0")

    @property
    def h(self) -> float:
        return self.L / self.N

    @property
    def tau(self) -> float:
        return self.T / self.M

    @property
    def eta(self) -> float:
        return gamma(2.0 - self.alpha) * self.tau**self.alpha / self.h**2

    @property
    def x(self) -> np.ndarray:
        return self.h * np.arange(self.N + 1)

    @property
    def t(self) -> np.ndarray:
        return self.tau * np.arange(self.M + 1)


@dataclass
class FieldHistory:
    """All layers ``U[m, n] ~ u(n h, m tau)`` of one solve."""

    eta: float
    layers: np.ndarray = field(repr=False)
    x: np.ndarray = field(repr=False)
    t: np.ndarray = field(repr=False)
    scheme: SchemeKind
    first_layer: str

    @property
    def final(self) -> np.ndarray:
        return self.layers[-1]


def _interior_system(p: SubdiffusionProblem, w0: float, r1: np.ndarray, t: float) -> TridiagonalSystem:
    eta = p.eta
    m = p.N - 1
    rhs = r1.copy()
    rhs[0] += eta * p.uL(t)
    rhs[-1] += eta * p.uR(t)
    off = np.full(m - 1, -eta)
    return TridiagonalSystem(off, np.full(m, w0 + 2.0 * eta), off, rhs)


def _with_boundary(p: SubdiffusionProblem, interior: np.ndarray, t: float) -> np.ndarray:
    layer = np.empty(p.N + 1)
    layer[0] = p.uL(t)
    layer[-1] = p.uR(t)
    layer[1:-1] = interior
    return layer


def first_layer_implicit(p: SubdiffusionProblem) -> np.ndarray:
    """Layer at ``t = tau`` from the two-point Caputo step (matrix ``1 + 2 eta`` / ``-eta``)."""
    x = p.x[1:-1]
    g = gamma(2.0 - p.alpha) * p.tau**p.alpha
    r1 = np.asarray(p.u0(x), dtype=float) + g * np.asarray(p.forcing(x, p.tau), dtype=float)
    return _with_boundary(p, thomas_solve(_interior_system(p, 1.0, r1, p.tau)), p.tau)


def first_layer_taylor(p: SubdiffusionProblem, ut0: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Layer at ``t = tau`` from ``u(x, tau) ~ u0(x) + tau u_t(x, 0)``."""
    x = p.x[1:-1]
    interior = np.asarray(p.u0(x), dtype=float) + p.tau * np.asarray(ut0(x), dtype=float)
    return _with_boundary(p, interior, p.tau)


def solve_subdiffusion(
    p: SubdiffusionProblem,
    kind: SchemeKind | str,
    first_layer: str = "implicit",
    ut0: Callable[[np.ndarray], np.ndarray] | None = None,
) -> FieldHistory:
    """March all ``M`` layers; the full history is kept for the convolution."""
    kind = SchemeKind.parse(kind)
    U = np.empty((p.M + 1, p.N + 1))
    U[0] = np.asarray(p.u0(p.x), dtype=float)
    U[0, 0] = p.uL(0.0)
    U[0, -1] = p.uR(0.0)

    if first_layer == "implicit":
        U[1] = first_layer_implicit(p)
    elif first_layer == "taylor":
        if ut0 is None:
            raise ValueError("the taylor first layer needs ut0")
        U[1] = first_layer_taylor(p, ut0)
    else:
        raise ValueError(f"unknown first layer {first_layer!r}")

    g = gamma(2.0 - p.alpha) * p.tau**p.alpha
    xi = p.x[1:-1]
    for m in range(2, p.M + 1):
        w = coefficients(kind, p.alpha, m).weights
        t = m * p.tau
        # rows U[m-1], ..., U[0] against w_1..w_m
        history = w[1:] @ U[m - 1 :: -1, 1:-1]
        r1 = g * np.asarray(p.forcing(xi, t), dtype=float) - history
        U[m] = _with_boundary(p, thomas_solve(_interior_system(p, w[0], r1, t)), t)
    return FieldHistory(p.eta, U, p.x, p.t, kind, first_layer)


def benchmark_subdiffusion_exact(x, t):
    """Exact solution ``x^2 (1 - x)(1 - 4t + 5t^2)`` of the benchmark problem."""
    x = np.asarray(x, dtype=float)
    return x**2 * (1.0 - x) * (1.0 - 4.0 * t + 5.0 * t**2)


def benchmark_subdiffusion_ut0(x):
    """``u_t(x, 0) = -4 x^2 (1 - x)`` for the benchmark problem."""
    x = np.asarray(x, dtype=float)
    return -4.0 * x**2 * (1.0 - x)


def benchmark_subdiffusion_problem(alpha: float, N: int, M: int) -> SubdiffusionProblem:
    """Benchmark on the unit square with zero boundary values.

    The source term is ``D_t^a u - u_xx`` for the exact solution above, i.e.
    ``x^2 (1-x) (10 t^(2-a)/Gamma(3-a) - 4 t^(1-a)/Gamma(2-a)) - 2 (1-3x)(5t^2 - 4t + 1)``.
    """
    g2 = gamma(2.0 - alpha)
    g3 = gamma(3.0 - alpha)

    def forcing(x, t):
        x = np.asarray(x, dtype=float)
        caputo_t = 10.0 * t ** (2.0 - alpha) / g3 - 4.0 * t ** (1.0 - alpha) / g2
        return x**2 * (1.0 - x) * caputo_t - 2.0 * (1.0 - 3.0 * x) * (5.0 * t**2 - 4.0 * t + 1.0)

    def zero(t):
        return 0.0

    return SubdiffusionProblem(
        alpha=alpha,
        u0=lambda x: benchmark_subdiffusion_exact(x, 0.0),
        uL=zero,
        uR=zero,
        forcing=forcing,
        N=N,
        M=M,
    )


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_field_csv(history: FieldHistory, out: TextIO | None = None, layers: str = "final") -> str:
    """Write layers as CSV: header ``x_0..x_N`` then one row per saved layer.

    ``layers`` is ``"final"`` or ``"all"``. Returns the text written.
    """
    if layers == "final":
        rows = history.layers[-1:]
    elif layers == "all":
        rows = history.layers
    else:
        raise ValueError(f"layers must be 'final' or 'all', got {layers!r}")
    buf = io.StringIO()
    n = history.layers.shape[1]
    buf.write(",".join(f"x_{i}" for i in range(n)) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text
