import math
import time

import numpy as np
import pytest

from fraczeta.caputo import coefficients
from fraczeta.relaxation import (
    RelaxationProblem,
    benchmark_relaxation_problem,
    relaxation_exact_reference,
    solve_relaxation,
)
from fraczeta.special import gamma


def _dense_reference(p, kind):
    """Assemble every step as one lower-triangular system and solve it densely."""
    N, h = p.N, p.h
    g = gamma(2 - p.alpha) * h**p.alpha
    A = np.zeros((N + 1, N + 1))
    b = np.zeros(N + 1)
    A[0, 0] = 1.0
    b[0] = p.y0
    # first step: (y1 - y0) / g + B y1 = F1
    A[1, 0], A[1, 1] = -1.0, 1.0 + p.B * g
    b[1] = g * p.forcing(h)
    for n in range(2, N + 1):
        w = coefficients(kind, p.alpha, n).weights
        for k in range(n + 1):
            A[n, n - k] += w[k]
        A[n, n] += p.B * g
        b[n] = g * p.forcing(n * h)
    return np.linalg.solve(A, b)


class TestExactReference:
    def test_values(self):
        assert relaxation_exact_reference(0.0) == 1.0
        assert relaxation_exact_reference(1.0) == 2.0
        assert relaxation_exact_reference(0.5) == 0.25

    def test_forcing_consistent_at_zero(self):
        p = benchmark_relaxation_problem(0.8, 10)
        assert p.forcing(0.0) == p.y0


class TestSolver:
    @pytest.mark.parametrize("kind", ["l1", "l1z"])
    @pytest.mark.parametrize("B", [0.0, 1.0, 3.5])
    def test_constant_solution(self, kind, B):
        c = 0.7
        p = RelaxationProblem(alpha=0.45, B=B, forcing=lambda t: B * c, y0=c, T=2.0, N=40)
        sol = solve_relaxation(p, kind)
        np.testing.assert_allclose(sol.values, c, atol=1e-12)

    @pytest.mark.parametrize("kind", ["l1", "l1z"])
    def test_matches_dense_assembly(self, kind):
        p = benchmark_relaxation_problem(0.35, 25)
        sol = solve_relaxation(p, kind)
        np.testing.assert_allclose(sol.values, _dense_reference(p, kind), atol=1e-12)

    def test_general_coefficient(self):
        p = RelaxationProblem(alpha=0.6, B=2.5, forcing=lambda t: math.sin(t), y0=0.0, T=1.5, N=30)
        np.testing.assert_allclose(solve_relaxation(p, "l1z").values, _dense_reference(p, "l1z"), atol=1e-12)

    def test_initial_value_kept(self):
        sol = solve_relaxation(benchmark_relaxation_problem(0.5, 8), "l1z")
        assert sol.values[0] == 1.0
        assert sol.times[-1] == pytest.approx(1.0)

    @pytest.mark.parametrize("kind", ["l1", "l1z"])
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.8])
    def test_free_decay_is_monotone(self, kind, alpha):
        p = RelaxationProblem(alpha=alpha, B=1.0, forcing=lambda t: 0.0, y0=1.0, T=1.0, N=100)
        y = solve_relaxation(p, kind).values
        assert np.all(np.diff(y) <= 0)
        assert np.all((y >= 0) & (y <= 1))

    def test_rejects_bad_problem(self):
        with pytest.raises(ValueError):
            RelaxationProblem(alpha=0.5, B=1.0, forcing=lambda t: 0.0, y0=0.0, T=1.0, N=1)
        with pytest.raises(ValueError):
            RelaxationProblem(alpha=1.2, B=1.0, forcing=lambda t: 0.0, y0=0.0, T=1.0, N=5)
        with pytest.raises(ValueError):
            solve_relaxation(benchmark_relaxation_problem(0.5, 4), "gl")


def _max_err(alpha, N, kind):
    sol = solve_relaxation(benchmark_relaxation_problem(alpha, N), kind)
    return float(np.max(np.abs(sol.values - relaxation_exact_reference(sol.times))))


class TestBenchmark:
    def test_first_rows(self):
        assert _max_err(0.8, 20, "l1") == pytest.approx(0.0628014, rel=2e-3)
        assert _max_err(0.8, 20, "l1z") == pytest.approx(0.0081544, rel=5e-3)

    def test_order_trend(self):
        l1 = [_max_err(0.8, n, "l1") for n in (80, 160, 320)]
        l1z = [_max_err(0.8, n, "l1z") for n in (80, 160, 320)]
        o1 = [math.log2(a / b) for a, b in zip(l1, l1[1:])]
        oz = [math.log2(a / b) for a, b in zip(l1z, l1z[1:])]
        assert o1[0] < o1[1] < 1.2
        assert oz[0] < oz[1] < 2.0
        assert oz[1] > 1.97


def test_cost_is_quadratic():
    def best(N):
        p = benchmark_relaxation_problem(0.5, N)
        times = []
        for _ in range(3):
            start = time.perf_counter()
            solve_relaxation(p, "l1z")
            times.append(time.perf_counter() - start)
        return min(times)

    ratio = best(8000) / best(4000)
    # nominally 4; loose bounds keep this stable on a busy machine
    assert 2.0 < ratio < 8.0
