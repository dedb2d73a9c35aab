"""Weighted Riemann sums and a second-order approximation of ``J^(2-alpha)``.

For ``x = n h`` the left Riemann sum of ``(x - xi)^(1-alpha) y(xi)`` is

.. math::

    L = h^{2-\\alpha} \\sum_{k=1}^{n} k^{1-\\alpha} y(x - kh),

and removing its two leading error terms gives

.. math::

    J^{2-\\alpha} y(x) = \\frac{L - y(0) x^{1-\\alpha} h / 2
        - \\zeta(\\alpha-1) y(x) h^{2-\\alpha}}{\\Gamma(2-\\alpha)} + O(h^2).
"""

from __future__ import annotations

import math

import numpy as np

from .caputo import SampledFunction
from .oracles import (
    RefFunction,
    caputo_series_oracle,
    derivative_at_zero,
    frac_integral_oracle,
    second_derivative_integral_oracle,
)
from .special import gamma, zeta

__all__ = [
    "claim1_check",
    "frac_integral_2ma",
    "frac_integral_oracle",
    "left_riemann_sum",
    "riemann_sum_of_one",
    "trapezoid_sum",
]


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")


def left_riemann_sum(y: SampledFunction, alpha: float) -> float:
    """``h^(2-alpha) sum_{k=1}^{n} k^(1-alpha) y(x - kh)`` with ``x`` the last grid point."""
    _check_alpha(alpha)
    n = y.n
    k = np.arange(1, n + 1, dtype=float)
    # values[n - k] for k = 1..n
    return y.h ** (2.0 - alpha) * math.fsum(k ** (1.0 - alpha) * y.values[n - 1 :: -1])


def trapezoid_sum(y: SampledFunction, alpha: float) -> float:
    """Trapezoidal sum; differs from :func:`left_riemann_sum` by ``y(0) x^(1-alpha) h / 2``."""
    _check_alpha(alpha)
    n = y.n
    k = np.arange(1, n, dtype=float)
    inner = math.fsum(k ** (1.0 - alpha) * y.values[n - 1 : 0 : -1]) if n > 1 else 0.0
    return 0.5 * y.values[0] * y.length ** (1.0 - alpha) * y.h + y.h ** (2.0 - alpha) * inner


def frac_integral_2ma(y: SampledFunction, alpha: float) -> float:
    """Second-order approximation of ``J^(2-alpha) y`` at the last grid point."""
    if y.n < 2:
        raise ValueError("need at least two steps")
    L = left_riemann_sum(y, alpha)
    x, h = y.length, y.h
    corrected = L - 0.5 * y.values[0] * x ** (1.0 - alpha) * h - zeta(alpha - 1.0) * y.values[-1] * h ** (2.0 - alpha)
    return corrected / gamma(2.0 - alpha)


def riemann_sum_of_one(alpha: float, x: float, h: float) -> float:
    """Three-term expansion of the left Riemann sum of ``y = 1``, exact up to ``O(h^2)``."""
    _check_alpha(alpha)
    return (
        x ** (2.0 - alpha) / (2.0 - alpha)
        + 0.5 * x ** (1.0 - alpha) * h
        + zeta(alpha - 1.0) * h ** (2.0 - alpha)
    )


def claim1_check(fn: RefFunction, alpha: float, x: float) -> float:
    """Residual of ``Gamma(2-a) D^a y = Gamma(2-a) J^(2-a) y'' + y'(0) x^(1-a)``.

    Both sides come from independent series, so the residual should sit at
    rounding level (about 1e-10 or below).
    """
    g = gamma(2.0 - alpha)
    lhs = g * caputo_series_oracle(fn, alpha, x)
    rhs = g * second_derivative_integral_oracle(fn, alpha, x) + derivative_at_zero(fn) * x ** (1.0 - alpha)
    return abs(lhs - rhs)
