"""Tests for the executable claim checks."""

import math

import numpy as np
import pytest

from infinitary.claims import (
    Check,
    ClaimReport,
    SuiteRunner,
    Task,
    bc_claim3,
    bc_claim4,
    bc_claim5,
    bc_claim6,
    bc_prob_Wt,
    block_return_probability,
    dense_word_probabilities,
    first_return_distribution,
    gap_vs_sync,
    harmonic_divergence,
    hpm_block_entropy_lower,
    hpm_hmu_upper,
    kac_consistency,
    kac_return_series,
    lumped_vs_exact,
    rate_floor,
    reports_frame,
    root_descent_law,
    run_task,
    stationarity_residuals,
    stationary_balance,
    verify_alternative_rate,
    verify_block_returns,
    verify_claim4,
    verify_even,
    verify_hpm,
    verify_hpm_growth,
    verify_kac,
    verify_oracle,
    verify_return_times,
    verify_sync,
)
from infinitary.claims.suite import BC_SYNC_MASS_TOL, SYNC_LENGTH
from infinitary.config import RunConfig
from infinitary.errors import ParamError
from infinitary.optimization import CacheManager, memoize, parallel_map
from infinitary.processes import (
    ROOT,
    bc_machine,
    bc_normalizer,
    closed_form_root_mass,
    hpm_normalizer,
    trigamma,
)
from infinitary.processes.bc import branching_series
from infinitary.toolkit.hmm import StateKey, finite_machine
from infinitary.toolkit.math import Enclosure

Q0 = 1e-4
S1 = StateKey("even", (1,))


def _square(x):
    return x * x


class TestChecks:
    """Tests for Check and ClaimReport."""

    def test_bounds(self):
        value = Enclosure(0.2, 0.3)
        assert Check.at_least("c", 1, value, 0.1).passed
        assert not Check.at_least("c", 1, value, 0.25).passed
        assert Check.at_most("c", 1, value, 0.4).passed
        assert not Check.at_most("c", 1, value, 0.25).passed
        assert Check.at_most("c", 1, value, 0.4).delta == pytest.approx(0.1)

    def test_not_below(self):
        assert not Check.not_below("c", 1, Enclosure.point(0.5), Enclosure.point(0.6)).passed
        # wide enclosures cannot certify a violation
        assert Check.not_below("c", 1, Enclosure(0.5, 0.7), Enclosure.point(0.6)).passed
        assert Check.not_below("c", 1, Enclosure.point(0.6), Enclosure.point(0.6)).passed

    def test_agrees_and_holds(self):
        assert Check.agrees("c", None, 1.0, 1.0 + 1e-13, 1e-12).passed
        assert not Check.agrees("c", None, 1.0, 1.1, 1e-12).passed
        check = Check.holds("c", None, True)
        assert check.passed
        assert math.isnan(check.bound)
        assert check.relation == "holds"

    def test_overlapping(self):
        check = Check.overlapping("c", 1, Enclosure(0.2, 0.3), Enclosure(0.25, 0.4))
        assert check.passed
        assert check.delta == 0.0
        assert check.relation == "in"
        check = Check.overlapping("c", 1, Enclosure(0.2, 0.3), Enclosure(0.35, 0.4))
        assert not check.passed
        assert check.delta == pytest.approx(0.05)
        # midpoints far apart relative to the widths still pass when the sets meet
        assert Check.overlapping("c", 1, Enclosure(0.0, 1.0), Enclosure.point(0.999)).passed
        assert Check.overlapping("c", 1, Enclosure.point(0.3), Enclosure.point(0.3 + 1e-13),
                                 slack=1e-12).passed

    def test_report(self):
        report = ClaimReport("demo", "two checks")
        assert not report.passed
        report.add(Check.holds("a", 2, True))
        report.add(Check.holds("b", 5, False))
        assert not report.passed
        assert [c.claim for c in report.failures] == ["b"]
        assert report.t_range == range(2, 6)
        assert report.summary() == "demo: FAIL (1 of 2)"

        frame = report.to_frame()
        assert list(frame["claim"]) == ["a", "b"]
        assert list(frame["passed"]) == [True, False]

    def test_reports_frame(self):
        assert reports_frame([]).empty
        first = ClaimReport("x")
        first.add(Check.holds("x", 1, True))
        second = ClaimReport("y")
        second.add(Check.holds("y", 2, True))
        frame = reports_frame([first, ClaimReport("empty"), second])
        assert list(frame["claim"]) == ["x", "y"]


class TestGenericChecks:
    """Tests for the checks valid for any machine."""

    def test_kac(self, even):
        value = kac_consistency(even, S1)
        assert value.contains(1.5)
        assert value.width < 1e-8
        with pytest.raises(ParamError):
            kac_consistency(even, S1, eps=0.0)

    def test_kac_zero_weight(self):
        stuck = finite_machine("stuck", "01", {"0": [[1.0, 0.0], [1.0, 0.0]]},
                               stationary=[1.0, 0.0])
        with pytest.raises(ParamError):
            kac_consistency(stuck, StateKey("stuck", (2,)))

    def test_kac_reports(self, bc_exact, hpm_exact):
        assert verify_kac(bc_exact, ROOT, 1.0 / closed_form_root_mass(Q0)).passed
        c = hpm_normalizer().midpoint
        assert verify_kac(hpm_exact, StateKey("hpm", (2, 1)), 4.0 / c).passed
        assert not verify_kac(hpm_exact, StateKey("hpm", (2, 1)), 4.0).passed

    def test_rate_floor(self, even, nonunifilar):
        assert rate_floor(even, t_max=6).passed
        assert rate_floor(nonunifilar, t_max=6).passed

    def test_sync(self, even):
        assert verify_sync(even, t=10, bound=0.05).passed
        report = verify_sync(even, t=10, bound=None)
        assert report.passed
        assert len(report.checks) == 1

    def test_gap_vs_sync(self, even):
        assert gap_vs_sync(even, t_max=5).passed

    def test_alternative_rate(self, nonunifilar, even):
        assert verify_alternative_rate(nonunifilar, t=3).passed
        assert verify_alternative_rate(even, t=3).passed


class TestEvenChecks:
    """Tests for the Even Process checks."""

    def test_dense_oracle(self, even):
        words = dense_word_probabilities(even, 2)
        assert words == pytest.approx({"00": 1 / 6, "01": 1 / 6, "10": 1 / 6, "11": 1 / 2})

    def test_dense_requires_finite(self, bc_exact):
        with pytest.raises(ParamError):
            dense_word_probabilities(bc_exact, 1)

    def test_oracle(self, even_p):
        assert verify_oracle(even_p, t_max=6).passed

    def test_verify_even(self):
        report = verify_even(0.5)
        assert report.passed, report.failures


class TestHPMChecks:
    """Tests for the HPM series bounds."""

    def test_block_lower(self):
        c = hpm_normalizer().midpoint
        assert hpm_block_entropy_lower(4) == pytest.approx(c / 2.0 * math.log2(4.0 / c))
        assert hpm_block_entropy_lower(5) == hpm_block_entropy_lower(4)
        assert hpm_block_entropy_lower(100) < hpm_block_entropy_lower(1000)
        with pytest.raises(ParamError):
            hpm_block_entropy_lower(3)

    def test_hmu_upper(self):
        assert hpm_hmu_upper(1).contains(1.0, slack=1e-9)
        assert hpm_hmu_upper(100).upper < hpm_hmu_upper(10).upper
        with pytest.raises(ParamError):
            hpm_hmu_upper(0)

    def test_verify_hpm(self):
        report = verify_hpm(t_max=6)
        assert report.passed, report.failures

    @pytest.mark.slow
    def test_verify_hpm_full_range(self):
        # upper series for t <= 40 and the block lower bound for t = 4..41
        report = verify_hpm(t_max=40)
        assert report.passed, report.failures
        lower = [c.t for c in report.checks if c.claim == "hpm-block-lower"]
        assert set(range(4, 25)) <= set(lower)

    @pytest.mark.slow
    def test_growth(self):
        assert verify_hpm_growth().passed


class TestBCChecks:
    """Tests for the BC series evaluators and checks."""

    def test_copy_word_series(self):
        _, c = bc_normalizer(Q0)
        for t in (1, 5, 20):
            p = bc_prob_Wt(t, Q0)
            assert p.lower >= c.upper / (12.0 * t)
            assert p.upper <= 6.0 * c.lower / t
        with pytest.raises(ParamError):
            bc_prob_Wt(0, Q0)

    def test_copy_word_trigamma(self):
        # P(W_t) = C psi_1(t) must hold to the certified precision at every t
        _, c = bc_normalizer(Q0)
        for t in (1, 2, 7, 30):
            p = bc_prob_Wt(t, Q0)
            closed = c * float(trigamma(t))
            assert p.overlaps(closed, slack=1e-13 * closed.upper)
        assert bc_prob_Wt(1, Q0).contains(3.28836215e-4, slack=2e-12)

    def test_branching_series_precision(self):
        fine = branching_series(2.5e-11)
        assert fine.width <= 3e-11
        assert fine.contains(2.0126187261, slack=1e-9)
        assert branching_series(1e-6).overlaps(fine)

    def test_claim3(self, bc_lumped):
        report = bc_claim3(t_max=12, q0=Q0, spec=bc_lumped, enumerate_to=5)
        assert report.passed, report.failures
        assert any(c.claim == "claim3-enumeration" for c in report.checks)

    def test_claim4(self):
        value = bc_claim4(2, q0=Q0)
        assert value.lower > 1.0 / 150.0
        report = verify_claim4(t_max=3, q0=Q0)
        assert report.passed, report.failures

    def test_claim4_horizon(self, bc_lumped):
        # the conditional needs words one symbol longer than the condition
        with pytest.raises(ParamError):
            bc_claim4(9, spec=bc_lumped)

    @pytest.mark.parametrize("t", [1, 3])
    def test_claim5(self, t):
        report = bc_claim5(t, q0=Q0)
        assert report.passed, report.failures

    def test_claim6(self):
        report = bc_claim6(t_max=4, q0=Q0, mass_tol=1e-6)
        assert report.passed, report.failures

    @pytest.mark.slow
    def test_claim3_full_range(self):
        report = bc_claim3(t_max=50, q0=Q0, enumerate_to=8)
        assert report.passed, report.failures
        assert report.t_range == range(1, 51)

    @pytest.mark.slow
    def test_claim4_full_range(self):
        report = verify_claim4(t_max=8, q0=Q0)
        assert report.passed, report.failures

    @pytest.mark.slow
    @pytest.mark.parametrize("t", range(1, 9))
    def test_claim5_full_range(self, t):
        report = bc_claim5(t, q0=Q0)
        assert report.passed, report.failures

    @pytest.mark.slow
    def test_claim6_full_range(self):
        report = bc_claim6(t_max=10, q0=Q0, mass_tol=1e-6)
        assert report.passed, report.failures
        assert {c.t for c in report.checks if c.claim == "claim6"} == set(range(1, 11))

    @pytest.mark.slow
    def test_synchronization(self):
        spec = bc_machine(Q0, horizon=SYNC_LENGTH + 1)
        report = verify_sync(spec, t=SYNC_LENGTH, mass_tol=BC_SYNC_MASS_TOL, bound=1e-3)
        assert report.passed, report.failures

    def test_harmonic_divergence(self):
        assert harmonic_divergence(1, 3600.0) == pytest.approx(1.0)
        assert harmonic_divergence(2, 3600.0) == pytest.approx(1.5)
        assert harmonic_divergence(10**6, 1.0) > harmonic_divergence(10**3, 1.0)
        with pytest.raises(ParamError):
            harmonic_divergence(0, 1.0)

    def test_stationary_balance(self):
        report = stationary_balance(Q0, max_depth=10, bound_depth=12)
        assert report.passed, report.failures

    def test_stationarity_residuals(self):
        report = stationarity_residuals(Q0, horizon=8)
        assert report.passed, report.failures

    def test_descent_law(self):
        report = root_descent_law(Q0, t_max=6)
        assert report.passed, report.failures

    def test_first_returns(self, bc_exact):
        returns = first_return_distribution(bc_exact, 8)
        p0 = 1.0 - 2.0 * Q0
        assert returns[0] == 0.0
        assert returns[1] == pytest.approx(p0)
        assert returns[2] == pytest.approx((1.0 - p0) * 0.75)
        np.testing.assert_array_equal(returns[3::2], 0.0)
        assert returns.sum() <= 1.0

    def test_return_times(self):
        report = verify_return_times(Q0, max_length=10)
        assert report.passed, report.failures
        root, _ = bc_normalizer(Q0)
        assert kac_return_series(Q0).overlaps(root.reciprocal(), slack=1e-9)

    def test_block_returns(self):
        assert block_return_probability(3, 2) == 0.0
        assert block_return_probability(2, 4) == pytest.approx(0.36 * 3 / 2.08)
        report = verify_block_returns(Q0)
        assert report.passed, report.failures

    def test_lumped_vs_exact(self):
        report = lumped_vs_exact(Q0, horizon=4, words=("4", "40", "02", "2323"))
        assert report.passed, report.failures


class TestSuite:
    """Tests for suite assembly and execution."""

    def test_run_task(self):
        task = Task(verify_kac, {"name": "even"}, {"state": S1, "expected": 1.5})
        assert run_task(task).passed
        assert run_task(Task(root_descent_law, None, {"q0": Q0, "t_max": 3})).passed

    def test_task_lists(self):
        assert len(SuiteRunner(RunConfig(machine="even")).tasks()) == 9
        assert len(SuiteRunner(RunConfig(machine="hpm")).tasks()) == 4
        bc_tasks = SuiteRunner(RunConfig(machine="bc", t_max=4)).tasks()
        assert len(bc_tasks) == 17
        assert all(callable(task.func) for task in bc_tasks)

    @pytest.mark.slow
    def test_even_suite(self):
        reports = SuiteRunner(RunConfig(machine="even", t_max=6)).run()
        assert len(reports) == 9
        assert all(r.passed for r in reports), [r.summary() for r in reports if not r.passed]

    @pytest.mark.slow
    @pytest.mark.parametrize("machine, t_max", [("hpm", 40), ("bc", 10)])
    def test_full_suite(self, machine, t_max):
        runner = SuiteRunner(RunConfig(machine=machine, t_max=t_max))
        reports = runner.run()
        assert len(reports) == len(runner.tasks())
        assert all(r.passed for r in reports), [r.summary() for r in reports if not r.passed]


class TestOptimization:
    """Tests for memoisation and the parallel map."""

    def test_memoize(self):
        calls = []

        @memoize(maxsize=2)
        def double(x):
            calls.append(x)
            return 2 * x

        assert double(1) == 2
        assert double(1) == 2
        assert calls == [1]
        double(2)
        double(3)
        assert double.cache_info()["size"] == 2
        double(1)
        assert calls == [1, 2, 3, 1]
        assert double.cache_info()["hits"] == 1
        double.cache_clear()
        assert double.cache_info()["size"] == 0

    def test_parallel_map_order(self):
        items = list(range(10))
        expected = [x * x for x in items]
        assert parallel_map(_square, items, n_workers=1) == expected
        assert parallel_map(_square, items, n_workers=3, use_threads=True) == expected
        assert parallel_map(_square, [], n_workers=4) == []

    def test_cache_registry(self):
        @memoize(maxsize=None)
        def triple(x):
            return 3 * x

        triple(2)
        name = f"{triple.__module__}.{triple.__qualname__}"
        assert CacheManager.get_cache_info()[name]["size"] == 1
        CacheManager.clear_cache(name)
        assert triple.cache_info()["size"] == 0
