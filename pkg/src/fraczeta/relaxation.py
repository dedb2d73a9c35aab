"""Explicit time stepping for the fractional relaxation equation

.. math::

    y^{(\\alpha)}(t) + B y(t) = F(t), \\qquad 0 < t \\le T, \\quad y(0) = y_0.

Writing ``g = Gamma(2-alpha) h^alpha`` and ``w`` for the scheme weights at step
``n``, every step is a scalar update

.. math::

    \\tilde y_n = \\frac{g F_n - \\sum_{k=1}^{n} w_k \\tilde y_{n-k}}{w_0 + B g}.

The first step always uses the two-point formula
``(y_1 - y_0) / g + B y_1 = F_1``; for the L1 weights this is the same update.
The history sum makes a solve cost ``O(N^2)``.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .caputo import SchemeKind, coefficients
from .special import gamma

__all__ = [
    "RelaxationProblem",
    "RelaxationSolution",
    "benchmark_relaxation_problem",
    "relaxation_exact_reference",
    "solve_relaxation",
]


@dataclass(frozen=True)
class RelaxationProblem:
    """``y^(alpha) + B y = forcing(t)`` on ``[0, T]`` with ``N`` uniform steps.

    When the exact solution is continuously differentiable it must start at
    ``y0 = forcing(0) / B``; this is not enforced.
    """

    alpha: float
    B: float
    forcing: Callable[[float], float]
    y0: float
    T: float
    N: int

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if self.B < 0:
            raise ValueError("B must be non-negative")
        if not self.T > 0:
            raise ValueError("T must be positive")
        if self.N < 2:
            raise ValueError("N must be at least 2")

    @property
    def h(self) -> float:
        return self.T / self.N

    @property
    def times(self) -> np.ndarray:
        return self.h * np.arange(self.N + 1)


@dataclass(frozen=True)
class RelaxationSolution:
    h: float
    values: np.ndarray = field(repr=False)
    scheme: SchemeKind

    @property
    def times(self) -> np.ndarray:
        return self.h * np.arange(self.values.size)


def solve_relaxation(p: RelaxationProblem, kind: SchemeKind | str) -> RelaxationSolution:
    """Solve with the L1 (``kind="l1"``) or zeta-corrected (``kind="l1z"``) weights."""
    kind = SchemeKind.parse(kind)
    h = p.h
    g = gamma(2.0 - p.alpha) * h**p.alpha
    forcing = np.array([float(p.forcing(t)) for t in p.times])

    y = np.empty(p.N + 1)
    y[0] = p.y0
    y[1] = (y[0] + g * forcing[1]) / (1.0 + p.B * g)
    for n in range(2, p.N + 1):
        w = coefficients(kind, p.alpha, n).weights
        history = np.dot(w[1:], y[n - 1 :: -1])
        y[n] = (g * forcing[n] - history) / (w[0] + p.B * g)
    return RelaxationSolution(h, y, kind)


def relaxation_exact_reference(t):
    """Exact solution ``1 - 4t + 5t^2`` of the benchmark problem."""
    t = np.asarray(t, dtype=float)
    return 1.0 - 4.0 * t + 5.0 * t**2


def benchmark_relaxation_problem(alpha: float, N: int, T: float = 1.0) -> RelaxationProblem:
    """Benchmark with ``B = 1`` whose exact solution is ``1 - 4t + 5t^2``."""
    g2 = gamma(2.0 - alpha)
    g3 = gamma(3.0 - alpha)

    def forcing(t: float) -> float:
        return (
            1.0 - 4.0 * t + 5.0 * t**2
            - 4.0 / g2 * t ** (1.0 - alpha)
            + 10.0 / g3 * t ** (2.0 - alpha)
        )

    return RelaxationProblem(alpha=alpha, B=1.0, forcing=forcing, y0=1.0, T=T, N=N)
