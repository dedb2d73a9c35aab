import math

import pytest

from fraczeta.convergence import (
    BENCHMARKS,
    TABLE_STEPS,
    ConvergenceReport,
    estimate_order,
    max_error,
    reproduce_table,
    run_study,
)

FAST_STEPS = (0.1, 0.05, 0.025)


class TestMaxError:
    def test_identical(self):
        assert max_error([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 0.0

    def test_simple(self):
        assert max_error([1, 2], [1, 2.5]) == 0.5

    def test_mismatch(self):
        with pytest.raises(ValueError):
            max_error([1, 2], [1])


class TestEstimateOrder:
    def test_printed_rows(self):
        # the order printed beside 0.000878437 in the cos/L1 table is 1.41867
        assert estimate_order(0.0023484, 0.000878437) == pytest.approx(1.41867, abs=1e-4)
        assert estimate_order(0.0628014, 0.0275997) == pytest.approx(1.1861, abs=1e-4)

    def test_exact_second_order(self):
        assert estimate_order(4e-3, 1e-3) == 2.0

    @pytest.mark.parametrize("pair", [(0.0, 1.0), (1.0, 0.0), (-1.0, 1.0)])
    def test_non_positive(self, pair):
        with pytest.raises(ValueError):
            estimate_order(*pair)


class TestRunStudy:
    def test_report_invariants(self):
        rep = run_study("table1", h_list=TABLE_STEPS)
        assert [r.h for r in rep.rows] == list(TABLE_STEPS)
        assert rep.rows[0].ratio is None and rep.rows[0].order is None
        for prev, row in zip(rep.rows, rep.rows[1:]):
            assert row.ratio == pytest.approx(prev.max_error / row.max_error, rel=1e-15)
            assert abs(row.order - math.log2(prev.max_error / row.max_error)) <= 1e-12
        assert rep.scheme == "l1" and rep.alpha == 0.6

    def test_table1_first_error(self):
        rep = run_study("table1", h_list=TABLE_STEPS)
        assert rep.row(0.05).max_error == pytest.approx(0.0023484, rel=2e-3)

    def test_table3_orders_decrease_toward_two(self):
        orders = [o for o in run_study("table3-cos").orders if o is not None]
        assert all(2.0 <= o <= 2.35 for o in orders)
        assert all(b < a for a, b in zip(orders, orders[1:]))

    def test_table5_final_order(self):
        rep = run_study("table5", "l1z", h_list=(0.00625, 0.003125))
        assert rep.rows[-1].order >= 1.98

    def test_integral_studies_report_a3(self):
        rep = run_study("integral-cos", h_list=FAST_STEPS)
        assert rep.scheme == "a3" and rep.alpha == 0.5

    def test_generic_overrides(self):
        rep = run_study("caputo-log", "l1", alpha=0.3, h_list=FAST_STEPS)
        assert rep.scheme == "l1" and rep.alpha == 0.3
        rep = run_study("subdiffusion", "l1z", h_list=FAST_STEPS, coupling="tau=h/2")
        assert [r.tau for r in rep.rows] == [h / 2 for h in FAST_STEPS]
        assert rep.meta == {"first_layer": "implicit"}

    def test_bit_reproducible(self):
        a = run_study("table6", "l1z", h_list=FAST_STEPS)
        b = run_study("table6", "l1z", h_list=FAST_STEPS)
        assert a.to_csv() == b.to_csv()

    def test_threads_do_not_change_values(self, monkeypatch):
        serial = run_study("table4", "l1z", h_list=FAST_STEPS, threads=0)
        monkeypatch.setenv("FRACDIFF_THREADS", "3")
        threaded = run_study("table4", "l1z", h_list=FAST_STEPS)
        assert serial.rows == threaded.rows

    def test_bad_thread_env(self, monkeypatch):
        monkeypatch.setenv("FRACDIFF_THREADS", "many")
        with pytest.raises(ValueError):
            run_study("table4", h_list=FAST_STEPS)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"benchmark": "table99"},
            {"benchmark": "table1", "h_list": (0.1, 0.04)},
            {"benchmark": "table1", "h_list": ()},
            {"benchmark": "table1", "alpha": 1.0},
            {"benchmark": "table5", "coupling": "fixed-x"},
            {"benchmark": "table1", "h_list": (0.3,)},
        ],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            run_study(**kwargs)

    def test_every_benchmark_runs(self):
        for key in BENCHMARKS:
            rep = run_study(key, h_list=(0.1, 0.05))
            assert all(e > 0 for e in rep.errors)


class TestReport:
    def _report(self):
        return run_study("table2-cos", h_list=FAST_STEPS)

    def test_csv_layout(self):
        lines = self._report().to_csv().splitlines()
        assert lines[0] == "# benchmark=table2-cos scheme=a3 alpha=0.40000000000000002 coupling=fixed-x"
        assert lines[1] == "h,tau,error,ratio,order"
        assert lines[2].startswith("0.10000000000000001,,") and lines[2].endswith(",,")
        assert len(lines) == 2 + len(FAST_STEPS)

    def test_csv_without_comments(self):
        assert self._report().to_csv(header_comments=False).startswith("h,tau,error,ratio,order\n")

    def test_row_lookup(self):
        rep = self._report()
        assert rep.row(0.05).h == 0.05
        with pytest.raises(KeyError):
            rep.row(0.07)

    def test_text(self):
        text = self._report().to_text()
        assert text.splitlines()[0].startswith("table2-cos")
        assert len(text.splitlines()) == 2 + len(FAST_STEPS)

    def test_is_report(self):
        assert isinstance(self._report(), ConvergenceReport)


class TestReproduceTable:
    def test_schemes_and_lead_in(self):
        reports = reproduce_table("table4")
        assert [r.scheme for r in reports] == ["l1", "l1z"]
        assert reports[0].rows[0].h == 0.1
        assert [r.h for r in reports[0].rows[1:]] == list(TABLE_STEPS)

    def test_unknown(self):
        with pytest.raises(ValueError):
            reproduce_table("caputo-cos")
