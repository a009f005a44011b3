"""Unit tests for confidence-sequence engines and the running CP sequence."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqmc.confseq import (
    ClopperPearsonSequence,
    EngineCarry,
    NormalSequence,
    RobbinsSequence,
    SpendingSchedule,
    cp_sequence_update,
    create_default_registry,
    reconcile_arrays,
)
from seqmc.errors import RejectedInputError
from seqmc.montecarlo import HypothesisState, StreamSeed, bernoulli_stream


def _cumulative(draws):
    draws = np.asarray(draws, dtype=np.int64)
    return np.arange(1, draws.size + 1), np.cumsum(draws)


class TestRegistry:
    """Engine lookup by name."""

    @pytest.mark.unit
    def test_default_engines(self):
        registry = create_default_registry()
        assert registry.names == ["cp", "robbins", "normal"]
        assert len(registry) == 3
        assert "cp" in registry

    @pytest.mark.unit
    def test_unknown_engine(self):
        with pytest.raises(RejectedInputError, match="unknown engine"):
            create_default_registry().get("bootstrap")

    @pytest.mark.unit
    def test_validity_flags(self):
        assert ClopperPearsonSequence.anytime_valid
        assert RobbinsSequence.anytime_valid
        assert not NormalSequence.anytime_valid


class TestReconcile:
    """Repair of running intersections that miss p_hat."""

    @pytest.mark.unit
    def test_containing_intersection_unchanged(self):
        lower, upper, flagged = reconcile_arrays(
            np.array([0.1]), np.array([0.3]), np.array([0.2])
        )
        assert (lower[0], upper[0], flagged[0]) == (0.1, 0.3, False)

    @pytest.mark.unit
    def test_missing_intersection_widened_to_hull(self):
        lower, upper, flagged = reconcile_arrays(
            np.array([0.1]), np.array([0.3]), np.array([0.35])
        )
        assert (lower[0], upper[0], flagged[0]) == (0.1, 0.35, True)

    @pytest.mark.unit
    def test_empty_intersection_collapses(self):
        lower, upper, flagged = reconcile_arrays(
            np.array([0.4]), np.array([0.3]), np.array([0.2])
        )
        assert (lower[0], upper[0], flagged[0]) == (0.2, 0.2, True)


class TestClopperPearsonSequence:
    """Running intersection of spending-level CP intervals."""

    @pytest.mark.unit
    def test_first_exceedance(self):
        state = HypothesisState(true_p=0.3)
        interval = cp_sequence_update(state, 1, SpendingSchedule(0.05))
        assert interval.lower == pytest.approx(0.015198, abs=1e-6)
        assert interval.upper == 1.0
        assert interval.risk_spent == pytest.approx(0.030396, abs=1e-6)
        assert state.current_interval is interval

    @pytest.mark.unit
    def test_rejects_non_binary_draw(self):
        with pytest.raises(RejectedInputError):
            cp_sequence_update(HypothesisState(true_p=0.3), 2, SpendingSchedule(0.05))

    @pytest.mark.unit
    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(min_value=0, max_value=1), min_size=1, max_size=60))
    def test_running_interval_properties(self, draws):
        schedule = SpendingSchedule(0.05)
        state = HypothesisState(true_p=0.5)
        previous = None
        previous_raw = (0.0, 1.0)
        for draw in draws:
            interval = cp_sequence_update(state, draw, schedule)
            assert interval.contains(state.p_hat)
            assert state.raw_lower >= previous_raw[0]
            assert state.raw_upper <= previous_raw[1]
            if previous is not None and not interval.degenerate:
                assert interval.lower >= previous.lower - 1e-12
                assert interval.upper <= previous.upper + 1e-12
            previous = interval
            previous_raw = (state.raw_lower, state.raw_upper)
        assert state.risk_spent <= 0.05

    @pytest.mark.unit
    def test_block_engine_matches_stepwise_update(self):
        draws = bernoulli_stream(0.2, StreamSeed(7)).take(80)
        n, s = _cumulative(draws)
        schedule = SpendingSchedule(0.05)
        block = ClopperPearsonSequence().running_bounds(n, s, schedule, EngineCarry())

        state = HypothesisState(true_p=0.2)
        for k, draw in enumerate(draws):
            interval = cp_sequence_update(state, int(draw), schedule)
            assert interval.lower == pytest.approx(block.lower[k], abs=1e-8)
            assert interval.upper == pytest.approx(block.upper[k], abs=1e-8)
            assert interval.degenerate == bool(block.degenerate[k])

    @pytest.mark.unit
    def test_split_blocks_match_single_block(self):
        draws = bernoulli_stream(0.05, StreamSeed(11)).take(500)
        n, s = _cumulative(draws)
        schedule = SpendingSchedule(0.01)
        engine = ClopperPearsonSequence()
        whole = engine.running_bounds(n, s, schedule, EngineCarry())

        carry = EngineCarry()
        first = engine.running_bounds(n[:200], s[:200], schedule, carry)
        second = engine.running_bounds(n[200:], s[200:], schedule, carry)
        assert np.array_equal(np.concatenate([first.lower, second.lower]), whole.lower)
        assert np.array_equal(np.concatenate([first.upper, second.upper]), whole.upper)
        assert carry.risk_spent == pytest.approx(whole.risk_spent[-1])


class TestOtherEngines:
    """Robbins and normal engines."""

    @pytest.mark.unit
    def test_robbins_risk_is_epsilon(self):
        n, s = _cumulative(bernoulli_stream(0.3, StreamSeed(3)).take(100))
        block = RobbinsSequence().running_bounds(n, s, SpendingSchedule(0.01), EngineCarry())
        assert np.all(block.risk_spent == 0.01)
        assert np.all((block.lower <= s / n) & (s / n <= block.upper))

    @pytest.mark.unit
    def test_normal_intervals_shrink(self):
        n, s = _cumulative(bernoulli_stream(0.3, StreamSeed(5)).take(4000))
        block = NormalSequence().running_bounds(n, s, SpendingSchedule(0.01), EngineCarry())
        assert block.length[-1] < block.length[99]
        assert not block.degenerate.any()
