"""Tests for the builtin machines."""

import math

import numpy as np
import pytest

from infinitary.errors import BudgetError, ParamError, UnknownStateError
from infinitary.processes import (
    BC_ALPHABET,
    MACHINES,
    ROOT,
    bc_entropy_rate,
    bc_machine,
    bc_normalizer,
    bc_root_entropy_check,
    build_machine,
    closed_form_root_mass,
    component_series,
    copy_symbol,
    descent_probability,
    hpm_machine,
    hpm_normalizer,
    phase_series,
    return_probability,
    trigamma,
)
from infinitary.toolkit.hmm import StateKey, is_unifilar, step_stationarity_residual, word_probability

Q0 = 1e-4


class TestHPM:
    """Tests for the heavy-tailed periodic mixture."""

    def test_normalizer(self):
        c = hpm_normalizer(1e-10)
        s = component_series(2, 1e-10)
        assert c.width <= 1e-10
        assert (c * s).contains(1.0, slack=1e-9)

    def test_invalid_series(self):
        with pytest.raises(ParamError):
            component_series(1, 1e-6)
        with pytest.raises(ParamError):
            phase_series(1, 1e-6)
        with pytest.raises(ParamError):
            hpm_machine(horizon=0)

    def test_cycles(self, hpm_exact):
        edges = hpm_exact.edges(StateKey("hpm", (3, 1)))
        assert [(e.symbol.glyph, e.target) for e in edges] == [("1", StateKey("hpm", (3, 2)))]
        edges = hpm_exact.edges(StateKey("hpm", (3, 3)))
        assert [(e.symbol.glyph, e.target) for e in edges] == [("0", StateKey("hpm", (3, 1)))]

        with pytest.raises(UnknownStateError):
            hpm_exact.edges(StateKey("hpm", (2, 3)))
        with pytest.raises(UnknownStateError):
            hpm_exact.edges(StateKey("even", (1,)))

    def test_weights(self, hpm_exact):
        c = hpm_exact.params["C"]
        assert hpm_exact.stationary_weight(StateKey("hpm", (2, 1))) == pytest.approx(c / 4.0)
        # every phase of a component carries the same mass
        w = [hpm_exact.stationary_weight(StateKey("hpm", (5, j))) for j in range(1, 6)]
        assert max(w) == min(w)

    def test_exact_support(self, hpm_exact):
        support = hpm_exact.support(0.5)
        assert support.tail <= 0.5
        assert support.total == pytest.approx(1.0)

    def test_zero_rate(self, hpm_exact):
        assert hpm_exact.entropy_rate(1e-9).upper == 0.0
        assert hpm_exact.state_entropy(StateKey("hpm", (4, 2))) == 0.0
        assert is_unifilar(hpm_exact)

    def test_state_cap_budget(self):
        # a capped enumerator leaves about C ln^2(2)/ln(i) of the mass unnamed
        capped = hpm_machine(max_states=1000)
        with pytest.raises(BudgetError):
            word_probability(capped, "1", 1e-6)
        value = word_probability(capped, "1", 0.2)
        assert 0.01 < value.width <= 0.2

    def test_pooled_support(self, hpm_pooled):
        support = hpm_pooled.support(1e-6)
        assert support.tail == 0.0
        assert support.total == pytest.approx(1.0, abs=1e-12)
        assert step_stationarity_residual(hpm_pooled, 1e-6) == pytest.approx(0.0, abs=1e-12)

    def test_pooled_horizon(self, hpm_pooled):
        assert hpm_pooled.horizon == 12
        assert hpm_pooled.structural is not hpm_pooled
        assert not hpm_pooled.is_atomic(StateKey("hpm_ones"))
        assert hpm_pooled.is_atomic(StateKey("hpm", (2, 1)))
        with pytest.raises(ParamError):
            word_probability(hpm_pooled, "1" * 13, 1e-6)
        with pytest.raises(UnknownStateError):
            hpm_pooled.edges(StateKey("hpm", (13, 1)))

    def test_zero_probability(self, hpm_pooled):
        c = hpm_pooled.params["C"]
        expected = c * phase_series(2, 1e-12).midpoint
        p0 = word_probability(hpm_pooled, "0", 1e-6)
        assert p0.midpoint == pytest.approx(expected, rel=1e-8)
        # each 0 is the end of one cycle and is followed by the start of the next
        assert word_probability(hpm_pooled, "101", 1e-6).midpoint == pytest.approx(
            p0.midpoint, rel=1e-10)
        assert word_probability(hpm_pooled, "00", 1e-6).upper == 0.0

    def test_pooled_matches_exact(self, hpm_exact, hpm_pooled):
        for word in ["1", "011", "0110", "10101"]:
            exact = word_probability(hpm_exact, word, 0.2)
            pooled = word_probability(hpm_pooled, word, 1e-6)
            assert exact.contains(pooled.midpoint, slack=1e-9)


class TestBC:
    """Tests for the branching copy process."""

    def test_transition_laws(self):
        assert descent_probability(0, Q0) == Q0
        assert return_probability(0, Q0) == pytest.approx(1.0 - 2.0 * Q0)
        assert descent_probability(1) == pytest.approx(1.0 / 8.0)
        assert return_probability(1) == pytest.approx(3.0 / 4.0)

        i = np.arange(1, 50, dtype=float)
        np.testing.assert_allclose(return_probability(i) + 2.0 * descent_probability(i), 1.0)

    def test_trigamma(self):
        assert trigamma(1.0) == pytest.approx(math.pi**2 / 6.0)
        assert trigamma(2.0) == pytest.approx(math.pi**2 / 6.0 - 1.0)

    def test_copy_symbol(self):
        # sigma_{2,3} has path 10
        assert copy_symbol(2, 3, 1) == 3
        assert copy_symbol(2, 3, 2) == 2
        assert copy_symbol(1, 1, 1) == 2
        assert copy_symbol(1, 2, 1) == 3

    def test_root_entropy_budget(self):
        value, passed = bc_root_entropy_check(Q0)
        assert passed
        assert value < 1.0 / 300.0

        value, passed = bc_root_entropy_check(0.01)
        assert not passed
        with pytest.raises(ParamError):
            bc_machine(0.01)
        with pytest.raises(ParamError):
            bc_root_entropy_check(0.6)

    def test_root_mass(self):
        root, c = bc_normalizer(Q0, 1e-10)
        assert root.contains(closed_form_root_mass(Q0), slack=1e-10)
        assert c.midpoint == pytest.approx(2.0 * Q0 * root.midpoint)

    def test_exact_edges(self, bc_exact):
        root_edges = bc_exact.edges(ROOT)
        assert sum(e.probability for e in root_edges) == pytest.approx(1.0)
        assert [e.symbol.glyph for e in root_edges] == ["0", "1", "4"]

        edges = bc_exact.edges(StateKey("bc", (2, 3, 1)))
        assert [e.symbol.glyph for e in edges] == ["0", "1", "3"]
        assert edges[2].target == StateKey("bc", (2, 3, 2))
        (last,) = bc_exact.edges(StateKey("bc", (2, 3, 2)))
        assert (last.symbol.glyph, last.target) == ("2", ROOT)

        for key in [StateKey("bc", (0, 2, 1)), StateKey("bc", (2, 5, 1)), StateKey("bc", (2, 1, 3))]:
            with pytest.raises(UnknownStateError):
                bc_exact.edges(key)

    def test_exact_weights(self, bc_exact):
        c = bc_exact.params["C"]
        assert bc_exact.stationary_weight(ROOT) == bc_exact.params["pi01"]
        assert bc_exact.stationary_weight(StateKey("bc", (1, 1, 1))) == pytest.approx(c / 2.0)
        assert bc_exact.stationary_weight(StateKey("bc", (2, 1, 2))) == pytest.approx(
            c / 16.0 * return_probability(2))

    def test_exact_support(self, bc_exact):
        support = bc_exact.support(1e-4)
        assert support.tail <= 1e-4
        assert support.total == pytest.approx(1.0)
        assert is_unifilar(bc_exact)

    def test_lumped_support(self, bc_lumped):
        support = bc_lumped.support(1e-6)
        assert support.tail == 0.0
        assert support.total == pytest.approx(1.0, abs=1e-9)
        assert step_stationarity_residual(bc_lumped, 1e-6) == pytest.approx(0.0, abs=1e-10)

    def test_loop_probability(self, bc_exact, bc_lumped):
        pi01 = bc_lumped.params["pi01"]
        expected = pi01 * (1.0 - 2.0 * Q0)
        assert word_probability(bc_lumped, "4", 1e-6).midpoint == pytest.approx(expected)
        assert word_probability(bc_exact, "4", 1e-4).lower == pytest.approx(expected)

    def test_lumped_matches_exact(self, bc_exact, bc_lumped):
        for word in ["0", "40", "0132", "2323", "02"]:
            exact = word_probability(bc_exact, word, 1e-4)
            lumped = word_probability(bc_lumped, word, 1e-6)
            assert exact.contains(lumped.midpoint, slack=1e-12)

    def test_mirror(self, bc_lumped):
        mirror = bc_lumped.relabel
        keys = [
            StateKey("bc", (2, 1, 1)),
            StateKey("bc_down", (3, 0, 1)),
            StateKey("bc_up", (4, 1)),
            StateKey("bc_up_pool"),
        ]
        for key in keys:
            assert mirror(mirror(key)) == key
        assert mirror(StateKey("bc", (2, 1, 1))) == StateKey("bc", (2, 4, 1))
        assert mirror(StateKey("bc_down", (3, 0, 1))) == StateKey("bc_down", (3, 1, 0))

    def test_lumped_entropies(self, bc_lumped):
        assert bc_lumped.state_entropy(StateKey("bc_up", (3,))) == 0.0
        assert bc_lumped.state_entropy(StateKey("bc", (3, 1, 2))) == 0.0
        assert bc_lumped.state_entropy(ROOT) == pytest.approx(bc_root_entropy_check(Q0)[0])
        assert not bc_lumped.is_atomic(StateKey("bc_up", (3,)))

    def test_lumped_rejects_bad_keys(self, bc_lumped):
        with pytest.raises(UnknownStateError):
            bc_lumped.edges(StateKey("bc_down", (2, 0, 1)))
        with pytest.raises(UnknownStateError):
            bc_lumped.edges(StateKey("bc_up", (3, 2)))
        with pytest.raises(UnknownStateError):
            bc_lumped.edges(StateKey("elsewhere", (1,)))

    def test_entropy_rate(self, bc_exact, bc_lumped):
        rate = bc_entropy_rate(Q0, 1e-10)
        assert rate.width <= 1e-9
        assert bc_exact.entropy_rate(1e-10) == rate
        assert bc_lumped.entropy_rate(1e-10) == rate
        assert 0.0 < rate.lower < 1.0 / 150.0


class TestRegistry:
    """Tests for machine lookup by name."""

    def test_names(self):
        assert set(MACHINES) == {"even", "hpm", "bc", "iid", "nonunifilar"}
        for name in MACHINES:
            assert build_machine(name).name == name

    def test_parameters(self):
        assert build_machine("even", p=0.3).params["p"] == 0.3
        assert build_machine("iid", p=0.3).params["probabilities"] == [0.3, 0.7]
        assert build_machine("bc", horizon=3).horizon == 3
        assert build_machine("hpm", horizon=5).horizon == 5
        assert build_machine("even", horizon=5).horizon is None
        assert build_machine("bc").alphabet.glyphs == BC_ALPHABET.glyphs

    def test_unknown(self):
        with pytest.raises(ParamError):
            build_machine("golden-mean")
        with pytest.raises(ParamError):
            build_machine("even", p=1.5)
