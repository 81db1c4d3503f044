"""Tests for trajectory sampling and empirical estimates."""

import math

import numpy as np
import pytest

from infinitary.analysis import block_entropies, word_table
from infinitary.errors import InsufficientDataError, ParamError, ReturnParityError
from infinitary.processes import ROOT
from infinitary.sampling import (
    mean_return_time,
    return_times,
    sample_path,
    sample_stationary_state,
    sample_trajectory,
)
from infinitary.toolkit.hmm import StateKey, word_probability
from infinitary.toolkit.math import Enclosure
from infinitary.toolkit.stats import (
    ChiSquareTest,
    EstimateReport,
    decode_id,
    empirical_block_entropy,
    empirical_word_frequencies,
    mean_estimate,
    window_ids,
    word_frequency_fit,
)

S1 = StateKey("even", (1,))
S2 = StateKey("even", (2,))


class TestSampler:
    """Tests for seeded walks."""

    def test_deterministic(self, even):
        first = sample_trajectory(even, 7, 200)
        second = sample_trajectory(even, 7, 200)
        assert first.word == second.word
        assert first.states == second.states
        assert first.seed == 7

    def test_shape(self, even):
        trajectory = sample_trajectory(even, 1, 100)
        assert trajectory.length == 100
        assert len(trajectory.states) == 101
        assert set(trajectory.word) <= {"0", "1"}
        assert trajectory.to_text() == trajectory.word + "\n"

    def test_forbidden_words(self, even):
        word = sample_trajectory(even, 3, 5000).word
        # runs of 1s bounded by 0s have even length
        assert "010" not in word
        assert "01110" not in word

    def test_deterministic_cycle(self, hpm_exact):
        rng = np.random.default_rng(0)
        path = sample_path(hpm_exact, rng, StateKey("hpm", (3, 1)), 6)
        assert path.word == "110110"
        assert path.states[-1] == StateKey("hpm", (3, 1))

    def test_path_from_state(self, even):
        rng = np.random.default_rng(5)
        path = sample_path(even, rng, S2, 10)
        assert path.word[0] == "1"
        assert path.states[1] == S1
        with pytest.raises(ParamError):
            sample_path(even, rng, S1, -1)

    def test_stationary_state(self, even):
        rng = np.random.default_rng(11)
        draws = [sample_stationary_state(even, rng) for _ in range(3000)]
        assert set(draws) == {S1, S2}
        share = draws.count(S1) / len(draws)
        assert share == pytest.approx(2.0 / 3.0, abs=0.05)

    def test_symbol_frequencies(self, even):
        trajectory = sample_trajectory(even, 2024, 20000)
        counts = np.bincount(trajectory.symbols, minlength=2)
        result = ChiSquareTest.test(counts, [1.0 / 3.0, 2.0 / 3.0])
        assert result.dof == 1
        assert result.n == 20000
        assert result.pvalue > 1e-4


class TestReturnTimes:
    """Tests for return-time sampling."""

    def test_even_returns(self, even):
        rng = np.random.default_rng(3)
        times = return_times(even, rng, S1, 500)
        assert set(np.unique(times)) <= {1, 2}
        with pytest.raises(ParamError):
            return_times(even, rng, S1, 0)

    def test_kac_mean(self, even):
        rng = np.random.default_rng(4)
        report = mean_return_time(even, rng, S1, 5000)
        assert report.exact.contains(1.5, slack=1e-9)
        assert report.estimate == pytest.approx(1.5, abs=0.05)
        assert report.within(5.0)
        assert report.details["max_return"] == 2.0

    def test_bc_parity(self, bc_exact):
        rng = np.random.default_rng(9)
        report = mean_return_time(bc_exact, rng, ROOT, 300, check_parity=True)
        # loops have length 1, every other return descends and copies back
        assert report.details["odd_returns"] == 0.0
        assert report.n == 300


    def test_parity_violation(self, hpm_exact):
        # every HPM phase state of a 3-cycle returns after exactly three steps
        rng = np.random.default_rng(1)
        with pytest.raises(ReturnParityError) as info:
            mean_return_time(hpm_exact, rng, StateKey("hpm", (3, 1)), 4, check_parity=True)
        assert info.value.odd == 4
        assert mean_return_time(hpm_exact, rng, StateKey("hpm", (3, 1)), 4).estimate == 3.0

    @pytest.mark.slow
    def test_bc_kac_mean(self, bc_exact):
        rng = np.random.default_rng(17)
        report = mean_return_time(bc_exact, rng, ROOT, 500_000, check_parity=True)
        assert report.details["odd_returns"] == 0.0
        assert report.details["long_returns"] > 0
        assert report.stderr > 0.0
        assert report.within(3.0), (report.estimate, report.stderr, report.exact)


class TestLongRuns:
    """Word frequencies of long trajectories against exact probabilities."""

    @pytest.mark.slow
    def test_even_word_frequencies(self, even):
        trajectory = sample_trajectory(even, 2718, 10**6)
        for t in range(1, 6):
            frame = empirical_word_frequencies([trajectory.symbols], t, "01", n_blocks=100)
            for word, frequency, stderr in zip(frame["word"], frame["frequency"], frame["stderr"]):
                exact = word_probability(even, word, 1e-12)
                assert exact.lower > 0.0, word
                assert abs(frequency - exact.midpoint) <= 4.0 * stderr + exact.width, (t, word)

class TestEstimators:
    """Tests for plug-in estimators."""

    def test_window_ids(self):
        np.testing.assert_array_equal(window_ids([0, 1, 1, 0], 2, 2), [1, 3, 2])
        assert window_ids([0, 1], 3, 2).size == 0
        assert decode_id(3, 2, "01") == "11"
        assert decode_id(5, 3, "012") == "012"
        with pytest.raises(ParamError):
            window_ids([0, 1], 0, 2)

    def test_block_entropy(self, even):
        trajectory = sample_trajectory(even, 21, 20000)
        exact = block_entropies(even, 2, 1e-10)[2]
        report = empirical_block_entropy([trajectory.symbols], 2, 2, exact=exact)
        assert report.quantity == "H[X^2]"
        assert report.details["distinct_words"] == 4.0
        assert report.estimate == pytest.approx(exact.midpoint, abs=0.05)

    def test_block_entropy_needs_data(self):
        with pytest.raises(InsufficientDataError):
            empirical_block_entropy([[0, 1, 0]], 2, 2)
        with pytest.raises(ParamError):
            empirical_block_entropy([[0, 1] * 100], 1, 2, n_blocks=1)

    def test_word_frequencies(self):
        frame = empirical_word_frequencies([[0, 1] * 50], 1, "01", n_blocks=2)
        assert list(frame["word"]) == ["0", "1"]
        assert list(frame["count"]) == [50, 50]
        np.testing.assert_allclose(frame["frequency"], [0.5, 0.5])
        np.testing.assert_allclose(frame["stderr"], [0.0, 0.0], atol=1e-12)
        with pytest.raises(InsufficientDataError):
            empirical_word_frequencies([[0, 1]], 1, "01", n_blocks=5)

    def test_mean_estimate(self):
        report = mean_estimate([1, 2, 3], "demo")
        assert report.estimate == 2.0
        assert report.stderr == pytest.approx(1.0 / np.sqrt(3.0))
        assert np.isnan(report.distance)
        with pytest.raises(InsufficientDataError):
            mean_estimate([], "empty")

    def test_report_distance(self):
        report = EstimateReport("x", 2.5, 0.1, Enclosure(1.0, 2.0), 10)
        assert report.distance == pytest.approx(0.5)
        assert not report.within(3.0)
        assert report.as_row()["exact_upper"] == 2.0
        with pytest.raises(ValueError):
            EstimateReport("x", 1.0, -0.1)


class TestChiSquare:
    """Tests for the word-count fits."""

    def test_perfect_fit(self):
        result = ChiSquareTest.test([50, 50], [0.5, 0.5])
        assert result.statistic == pytest.approx(0.0)
        assert result.pvalue == pytest.approx(1.0)
        assert not result.rejects()

    def test_poor_fit(self):
        result = ChiSquareTest.test([90, 10], [1.0, 1.0])
        assert result.rejects(0.01)

    def test_impossible_category(self):
        result = ChiSquareTest.test([40, 1], [1.0, 0.0])
        assert result.pvalue == 0.0
        assert math.isinf(result.statistic)
        # an empty impossible category drops out
        assert ChiSquareTest.test([40, 40, 0], [0.5, 0.5, 0.0]).dof == 1

    def test_pooling(self):
        result = ChiSquareTest.test([100, 2, 1], [0.97, 0.02, 0.01])
        assert result.pooled == 2
        assert result.dof == 1
        assert result.n == 103

    def test_invalid(self):
        with pytest.raises(ParamError):
            ChiSquareTest.test([1, 2, 3], [0.5, 0.5])
        with pytest.raises(ParamError):
            ChiSquareTest.test([10], [1.0])
        with pytest.raises(ParamError):
            ChiSquareTest.test([10, 10], [0.0, 0.0])

    def test_word_frequency_fit(self):
        symbols = [0, 1] * 500
        fit = word_frequency_fit([symbols], 1, "01", {"0": 0.5, "1": 0.5})
        assert fit.quantity == "chi2[X^1]"
        assert fit.statistic == pytest.approx(0.0)
        assert fit.n == 1000
        assert fit.as_row()["pvalue"] == pytest.approx(1.0)
        assert fit.rejects() is False
        # a word outside the listed law with no unlisted mass left rejects outright
        assert word_frequency_fit([symbols], 1, "01", {"0": 1.0}).pvalue == 0.0
        # otherwise the unlisted mass absorbs it
        assert word_frequency_fit([symbols], 1, "01", {"0": 0.5}).statistic == pytest.approx(0.0)

    def test_even_word_fit(self, even):
        trajectory = sample_trajectory(even, 8, 20000)
        fit = word_frequency_fit([trajectory.symbols], 3, "01", word_table(even, 3, 1e-10).expanded())
        assert fit.n == 19998
        assert math.isfinite(fit.statistic)
        # "010" has probability zero and never appears
        assert fit.pvalue > 0.0
