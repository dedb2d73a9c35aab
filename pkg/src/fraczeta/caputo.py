"""Caputo derivative discretizations on a uniform grid.

Two weight families are provided for

.. math::

    y^{(\\alpha)}(x_n) \\approx \\frac{1}{\\Gamma(2-\\alpha) h^\\alpha}
        \\sum_{k=0}^{n} w_k \\, y_{n-k}.

* ``SchemeKind.L1``: the classical L1 weights ``sigma_k``, accuracy
  ``O(h^(2-alpha))``.
* ``SchemeKind.L1Z``: the first three L1 weights shifted by multiples of
  ``zeta(alpha - 1)``, accuracy ``O(h^2)``.

With ``n = 2`` the L1Z correction of ``w_2`` lands on the boundary weight
``sigma_2 = 1 - 2^(1-alpha)``.
"""

from __future__ import annotations

import enum
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .oracles import caputo_series_oracle
from .special import gamma, zeta

__all__ = [
    "SampledFunction",
    "SchemeCoefficients",
    "SchemeKind",
    "caputo",
    "caputo_first_step",
    "caputo_l1",
    "caputo_l1z",
    "caputo_series_oracle",
    "coefficients",
    "delta_coefficients",
    "l1_correction",
    "sigma_coefficients",
]


class SchemeKind(enum.Enum):
    """Which weight family discretizes the Caputo derivative."""

    L1 = "l1"
    L1Z = "l1z"

    @classmethod
    def parse(cls, value: "SchemeKind | str") -> "SchemeKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown scheme {value!r}; expected 'l1' or 'l1z'") from None


@dataclass(frozen=True)
class SchemeCoefficients:
    """Weights ``w_0 .. w_n`` of one scheme for one ``(alpha, n)`` pair."""

    alpha: float
    n: int
    kind: SchemeKind
    weights: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return self.weights.size

    def apply(self, values: np.ndarray) -> float:
        """Return ``sum_k w_k values[n - k]``."""
        values = np.asarray(values, dtype=float)
        if values.size != self.n + 1:
            raise ValueError(f"expected {self.n + 1} samples, got {values.size}")
        return float(np.dot(self.weights, values[::-1]))


@dataclass(frozen=True)
class SampledFunction:
    """Samples ``y_0 .. y_N`` of a function on the grid ``origin + k h``."""

    h: float
    values: np.ndarray
    origin: float = 0.0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size < 2:
            raise ValueError("need a 1-D array with at least two samples")
        if not self.h > 0:
            raise ValueError(f"step must be positive, got {self.h!r}")
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        """Number of steps ``N`` (one less than the number of samples)."""
        return self.values.size - 1

    @property
    def grid(self) -> np.ndarray:
        return self.origin + self.h * np.arange(self.values.size)

    @property
    def length(self) -> float:
        return self.h * self.n

    @classmethod
    def sample(
        cls, f: Callable[[np.ndarray], np.ndarray], length: float, n: int, origin: float = 0.0
    ) -> "SampledFunction":
        """Sample a vectorized ``f`` on ``n`` equal steps of ``[origin, origin + length]``."""
        if n < 1:
            raise ValueError("n must be at least 1")
        h = length / n
        if abs(h * n - length) > 1e-12 * max(1.0, abs(length)):
            raise ValueError("step does not tile the interval")
        x = origin + h * np.arange(n + 1)
        return cls(h, np.asarray(f(x), dtype=float), origin)


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")


def sigma_coefficients(alpha: float, n: int) -> SchemeCoefficients:
    """L1 weights ``sigma_0 .. sigma_n``."""
    _check_alpha(alpha)
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n!r}")
    p = 1.0 - alpha
    w = np.empty(n + 1)
    w[0] = 1.0
    if n > 1:
        k = np.arange(1, n, dtype=float)
        w[1:n] = (k + 1.0) ** p - 2.0 * k**p + (k - 1.0) ** p
    w[n] = (n - 1.0) ** p - float(n) ** p
    return SchemeCoefficients(alpha, n, SchemeKind.L1, w)


def delta_coefficients(alpha: float, n: int) -> SchemeCoefficients:
    """Zeta-corrected weights ``delta_0 .. delta_n`` (``n >= 2``)."""
    _check_alpha(alpha)
    if n < 2:
        raise ValueError(f"the corrected scheme needs n >= 2, got {n!r}")
    z = zeta(alpha - 1.0)
    w = sigma_coefficients(alpha, n).weights
    w[0] -= z
    w[1] += 2.0 * z
    w[2] -= z
    return SchemeCoefficients(alpha, n, SchemeKind.L1Z, w)


def coefficients(kind: SchemeKind | str, alpha: float, n: int) -> SchemeCoefficients:
    """Dispatch to :func:`sigma_coefficients` or :func:`delta_coefficients`."""
    kind = SchemeKind.parse(kind)
    if kind is SchemeKind.L1:
        return sigma_coefficients(alpha, n)
    return delta_coefficients(alpha, n)


def _scale(alpha: float, h: float) -> float:
    return gamma(2.0 - alpha) * h**alpha


def caputo_l1(y: SampledFunction, alpha: float) -> float:
    """L1 approximation of the Caputo derivative at the last grid point."""
    w = sigma_coefficients(alpha, y.n)
    return w.apply(y.values) / _scale(alpha, y.h)


def caputo_l1z(y: SampledFunction, alpha: float) -> float:
    """Second-order zeta-corrected approximation at the last grid point.

    Needs at least three samples.
    """
    w = delta_coefficients(alpha, y.n)
    return w.apply(y.values) / _scale(alpha, y.h)


def caputo_first_step(y0: float, y1: float, alpha: float, h: float) -> float:
    """Caputo derivative at ``t = h`` from two samples: ``(y1 - y0) / (Gamma(2-alpha) h^alpha)``.

    Exact for linear functions; the local error for smooth ``y`` is
    ``O(h^(2-alpha))``.
    """
    _check_alpha(alpha)
    if not h > 0:
        raise ValueError(f"h must be positive, got {h!r}")
    return (y1 - y0) / _scale(alpha, h)


def caputo(y: SampledFunction, alpha: float, kind: SchemeKind | str = SchemeKind.L1Z) -> float:
    """Scheme-dispatching wrapper around :func:`caputo_l1` and :func:`caputo_l1z`."""
    if SchemeKind.parse(kind) is SchemeKind.L1:
        return caputo_l1(y, alpha)
    return caputo_l1z(y, alpha)


def l1_correction(alpha: float, second_derivative: float, h: float) -> float:
    """Leading L1 error term ``zeta(alpha-1)/Gamma(2-alpha) * y''(x) * h^(2-alpha)``."""
    _check_alpha(alpha)
    return zeta(alpha - 1.0) / gamma(2.0 - alpha) * second_derivative * h ** (2.0 - alpha)
