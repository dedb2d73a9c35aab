"""Reference values of Caputo derivatives and fractional integrals.

The test functions are ``"cos"``, ``"log1p"`` (``ln(1 + x)``) and polynomials
given as ascending coefficient sequences ``(p0, p1, ...)``. Every value is a
term-wise series evaluation, so the kernel singularity at ``xi = x`` never has
to be integrated numerically.

For ``ln(1 + x)`` the Maclaurin series converges too slowly near ``x = 1``;
instead ``(1 + x - s)**-r`` is expanded in powers of ``s / (1 + x)``, which
converges geometrically for every ``x > 0``.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterator, Sequence
from typing import Union

import numpy as np

from .errors import SeriesConvergenceError
from .special import gamma

__all__ = [
    "RefFunction",
    "caputo_series_oracle",
    "derivative_at_zero",
    "evaluate",
    "frac_integral_oracle",
    "second_derivative_integral_oracle",
]

RefFunction = Union[str, Sequence[float]]

TAIL_TOL = 1e-15
MAX_TERMS = 1000


def _sum_series(terms: Iterator[float], tol: float = TAIL_TOL, max_terms: int = MAX_TERMS) -> float:
    acc = []
    for i, term in enumerate(terms):
        acc.append(term)
        if abs(term) < tol:
            return math.fsum(acc)
        if i + 1 >= max_terms:
            break
    raise SeriesConvergenceError(f"series tail above {tol:g} after {max_terms} terms")


def _scaled_power(x: float, p: float, g: float) -> float:
    # x**p / Gamma(g), safe once Gamma(g) overflows
    if x == 0.0:
        return 0.0
    return math.exp(p * math.log(x) - math.lgamma(g))


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")


def _poly(fn: RefFunction) -> tuple[float, ...] | None:
    if isinstance(fn, str):
        if fn not in ("cos", "log1p"):
            raise ValueError(f"unknown test function {fn!r}")
        return None
    return tuple(float(c) for c in fn)


def evaluate(fn: RefFunction, x):
    """Evaluate a test function at ``x`` (scalar or array)."""
    coeffs = _poly(fn)
    x = np.asarray(x, dtype=float)
    if coeffs is None:
        return np.cos(x) if fn == "cos" else np.log1p(x)
    return np.polynomial.polynomial.polyval(x, coeffs) if coeffs else np.zeros_like(x)


def derivative_at_zero(fn: RefFunction) -> float:
    """First derivative at 0."""
    coeffs = _poly(fn)
    if coeffs is None:
        return 0.0 if fn == "cos" else 1.0
    return coeffs[1] if len(coeffs) > 1 else 0.0


def _reciprocal_power_integral(beta: float, x: float, r: int) -> float:
    # J^beta of (1 + xi)**-r at x, expanding (1 + x - s)**-r around s = 0
    q = 1.0 + x

    def terms() -> Iterator[float]:
        j = 0
        while True:
            yield math.comb(j + r - 1, j) * x ** (beta + j) / ((beta + j) * q ** (j + r))
            j += 1

    return _sum_series(terms()) / gamma(beta)


def _monomial_integral(p: int, beta: float, x: float) -> float:
    # J^beta x^p = p! x^(p + beta) / Gamma(p + beta + 1)
    return math.factorial(p) * _scaled_power(x, p + beta, p + beta + 1.0)


def caputo_series_oracle(fn: RefFunction, alpha: float, x: float) -> float:
    """Exact Caputo derivative of order ``alpha`` of a test function at ``x``.

    Raises :class:`SeriesConvergenceError` when the tail does not drop below
    1e-15 within 1000 terms.
    """
    _check_alpha(alpha)
    if not x > 0:
        raise ValueError(f"x must be positive, got {x!r}")
    coeffs = _poly(fn)
    if coeffs is not None:
        return math.fsum(
            c * math.factorial(p) * _scaled_power(x, p - alpha, p + 1.0 - alpha)
            for p, c in enumerate(coeffs)
            if p >= 1
        )
    if fn == "cos":

        def terms() -> Iterator[float]:
            m = 1
            while True:
                yield (-1) ** m * _scaled_power(x, 2 * m - alpha, 2 * m + 1 - alpha)
                m += 1

        return _sum_series(terms())
    # D^alpha ln(1+x) = J^(1-alpha) of 1/(1+xi)
    return _reciprocal_power_integral(1.0 - alpha, x, 1)


def frac_integral_oracle(fn: RefFunction, alpha: float, x: float) -> float:
    """Exact fractional integral of order ``2 - alpha`` of a test function at ``x``."""
    _check_alpha(alpha)
    if not x > 0:
        raise ValueError(f"x must be positive, got {x!r}")
    beta = 2.0 - alpha
    coeffs = _poly(fn)
    if coeffs is not None:
        return math.fsum(c * _monomial_integral(p, beta, x) for p, c in enumerate(coeffs))
    if fn == "cos":

        def terms() -> Iterator[float]:
            m = 0
            while True:
                yield (-1) ** m * _scaled_power(x, 2 * m + beta, 2 * m + 1 + beta)
                m += 1

        return _sum_series(terms())
    # ln(1+0) = 0, so J^beta ln(1+x) = J^(beta+1) of 1/(1+xi)
    return _reciprocal_power_integral(beta + 1.0, x, 1)


def second_derivative_integral_oracle(fn: RefFunction, alpha: float, x: float) -> float:
    """Fractional integral of order ``2 - alpha`` of the second derivative."""
    _check_alpha(alpha)
    beta = 2.0 - alpha
    coeffs = _poly(fn)
    if coeffs is not None:
        second = tuple(p * (p - 1) * c for p, c in enumerate(coeffs) if p >= 2)
        return frac_integral_oracle(second, alpha, x) if second else 0.0
    if fn == "cos":
        return -frac_integral_oracle("cos", alpha, x)
    return -_reciprocal_power_integral(beta, x, 2)


def as_callable(fn: RefFunction) -> Callable[[np.ndarray], np.ndarray]:
    """Wrap a test function as a vectorized callable."""
    return lambda x: evaluate(fn, x)
