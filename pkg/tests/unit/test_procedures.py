"""Unit tests for procedure thresholds, exact evaluation and partial decisions."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqmc.errors import RejectedInputError
from seqmc.partition import build_partition
from seqmc.procedures import (
    CellRange,
    DecisionState,
    KnowledgeVector,
    ProcedureKind,
    ProcedureSpec,
    brute_force_decisions,
    evaluate_exact,
    knowledge_leaving_undecided,
    partial_decisions,
    partition_for,
    procedure_thresholds,
    undecided_count_experiment,
)


@st.composite
def knowledge_instances(draw, min_m=1, max_m=5):
    kind = draw(st.sampled_from(list(ProcedureKind)))
    m = draw(st.integers(min_value=min_m, max_value=max_m))
    spec = ProcedureSpec(kind, 0.1, m)
    cells = len(procedure_thresholds(spec))
    ranges = []
    for _ in range(m):
        lo = draw(st.integers(min_value=0, max_value=cells))
        hi = draw(st.integers(min_value=lo, max_value=cells))
        ranges.append((lo, hi))
    return spec, KnowledgeVector.from_ranges(ranges)


class TestThresholds:
    """Threshold lists of each procedure."""

    @pytest.mark.unit
    def test_bh(self):
        assert procedure_thresholds(ProcedureSpec(ProcedureKind.BH, 0.1, 4)) == pytest.approx(
            (0.025, 0.05, 0.075, 0.1)
        )

    @pytest.mark.unit
    def test_bonferroni_single_threshold(self):
        assert procedure_thresholds(
            ProcedureSpec(ProcedureKind.BONFERRONI, 0.1, 4)
        ) == pytest.approx((0.025,))

    @pytest.mark.unit
    def test_holm(self):
        assert procedure_thresholds(ProcedureSpec(ProcedureKind.HOLM, 0.1, 2)) == pytest.approx(
            (0.05, 0.1)
        )

    @pytest.mark.unit
    @pytest.mark.parametrize("alpha, m", [(0.0, 3), (1.0, 3), (0.1, 0)])
    def test_invalid_spec(self, alpha, m):
        with pytest.raises(RejectedInputError):
            ProcedureSpec(ProcedureKind.BH, alpha, m)

    @pytest.mark.unit
    def test_spec_round_trip(self):
        spec = ProcedureSpec(ProcedureKind.HOLM, 0.05, 7)
        assert ProcedureSpec.from_dict(spec.to_dict()) == spec


class TestEvaluateExact:
    """Rejection sets on known p-values."""

    @pytest.mark.unit
    def test_bh_hand_example(self, bh4):
        assert evaluate_exact(bh4, [0.01, 0.02, 0.03, 0.2]) == {0, 1, 2}

    @pytest.mark.unit
    @pytest.mark.parametrize("kind", list(ProcedureKind))
    def test_all_zero_rejects_all(self, kind):
        assert evaluate_exact(ProcedureSpec(kind, 0.1, 5), [0.0] * 5) == set(range(5))

    @pytest.mark.unit
    @pytest.mark.parametrize("kind", list(ProcedureKind))
    def test_all_one_rejects_none(self, kind):
        assert evaluate_exact(ProcedureSpec(kind, 0.1, 5), [1.0] * 5) == set()

    @pytest.mark.unit
    def test_step_up_versus_step_down(self):
        pvalues = [0.01, 0.06, 0.07]
        assert evaluate_exact(ProcedureSpec(ProcedureKind.BH, 0.1, 3), pvalues) == {0, 1, 2}
        assert evaluate_exact(ProcedureSpec(ProcedureKind.HOLM, 0.1, 3), pvalues) == {0}

    @pytest.mark.unit
    def test_bonferroni(self):
        spec = ProcedureSpec(ProcedureKind.BONFERRONI, 0.1, 4)
        assert evaluate_exact(spec, [0.02, 0.025, 0.03, 0.5]) == {0, 1}

    @pytest.mark.unit
    def test_threshold_itself_rejects(self, bh4):
        assert evaluate_exact(bh4, [0.1, 0.5, 0.5, 0.5]) == set()
        assert evaluate_exact(bh4, [0.1, 0.1, 0.1, 0.1]) == {0, 1, 2, 3}

    @pytest.mark.unit
    def test_out_of_range_pvalue(self, bh4):
        with pytest.raises(RejectedInputError):
            evaluate_exact(bh4, [0.1, 0.2, 1.5, 0.3])

    @pytest.mark.unit
    def test_wrong_length(self, bh4):
        with pytest.raises(RejectedInputError):
            evaluate_exact(bh4, [0.1, 0.2])

    @pytest.mark.unit
    @settings(max_examples=100)
    @given(
        st.lists(st.floats(min_value=0.0, max_value=0.2), min_size=5, max_size=5),
        st.integers(min_value=0, max_value=4),
        st.floats(min_value=0.0, max_value=0.2),
    )
    def test_bh_count_antitone(self, pvalues, index, increase):
        spec = ProcedureSpec(ProcedureKind.BH, 0.1, 5)
        raised = list(pvalues)
        raised[index] = min(1.0, raised[index] + increase)
        assert len(evaluate_exact(spec, raised)) <= len(evaluate_exact(spec, pvalues))


class TestModels:
    """Cell ranges, knowledge vectors and decision states."""

    @pytest.mark.unit
    def test_cell_range(self):
        assert CellRange.decided(2).is_decided
        assert CellRange.undecided(4) == CellRange(0, 4)
        assert CellRange(1, 3).width == 3
        with pytest.raises(RejectedInputError):
            CellRange(3, 1)

    @pytest.mark.unit
    def test_knowledge_vector(self):
        knowledge = KnowledgeVector.from_ranges([(0, 0), CellRange(1, 4), (2, 2)])
        assert len(knowledge) == 3
        assert knowledge[1] == CellRange(1, 4)
        assert knowledge.undecided_entries == [1]

    @pytest.mark.unit
    def test_decision_state_rejects_overlap(self):
        with pytest.raises(RejectedInputError):
            DecisionState(frozenset({0}), frozenset({0}), frozenset())

    @pytest.mark.unit
    def test_decision_state_round_trip(self):
        state = DecisionState(frozenset({0, 2}), frozenset({1}), frozenset({3}))
        assert DecisionState.from_dict(state.to_dict()) == state
        assert state.m == 4
        assert state.undecided_count == 1
        assert not state.is_complete


class TestPartialDecisions:
    """Forced decisions from partial knowledge."""

    @pytest.mark.unit
    def test_all_below_first_threshold(self, bh3):
        knowledge = KnowledgeVector.from_ranges([(0, 0)] * 3)
        state = partial_decisions(bh3, knowledge, partition_for(bh3))
        assert state.forced_reject == {0, 1, 2}
        assert state.undecided == frozenset()

    @pytest.mark.unit
    def test_largest_unknown_blocks_everything(self, bh3):
        knowledge = KnowledgeVector.from_ranges([(2, 2), (2, 2), (0, 3)])
        partition = partition_for(bh3)
        state = partial_decisions(bh3, knowledge, partition)
        assert state.undecided == {0, 1, 2}
        assert brute_force_decisions(bh3, knowledge, partition) == state

    @pytest.mark.unit
    def test_single_bonferroni_unknown(self):
        spec = ProcedureSpec(ProcedureKind.BONFERRONI, 0.1, 1)
        knowledge = KnowledgeVector.from_ranges([(0, 1)])
        partition = partition_for(spec)
        assert partial_decisions(spec, knowledge, partition).undecided == {0}
        assert brute_force_decisions(spec, knowledge, partition).undecided == {0}

    @pytest.mark.unit
    def test_foreign_partition_rejected(self, bh3):
        knowledge = KnowledgeVector.from_ranges([(0, 0)] * 3)
        with pytest.raises(RejectedInputError, match="partition"):
            partial_decisions(bh3, knowledge, build_partition([0.02, 0.05, 0.1]))

    @pytest.mark.unit
    def test_wrong_length_rejected(self, bh3):
        with pytest.raises(RejectedInputError):
            partial_decisions(bh3, KnowledgeVector.from_ranges([(0, 0)]), partition_for(bh3))

    @pytest.mark.unit
    def test_cell_beyond_last_rejected(self, bh3):
        knowledge = KnowledgeVector.from_ranges([(0, 0), (0, 0), (0, 4)])
        with pytest.raises(RejectedInputError):
            partial_decisions(bh3, knowledge, partition_for(bh3))

    @pytest.mark.unit
    def test_brute_force_size_limit(self):
        spec = ProcedureSpec(ProcedureKind.BH, 0.1, 13)
        knowledge = KnowledgeVector.from_ranges([(0, 0)] * 13)
        with pytest.raises(RejectedInputError, match="m <= 12"):
            brute_force_decisions(spec, knowledge, partition_for(spec))

    @pytest.mark.unit
    @settings(max_examples=200, deadline=None)
    @given(knowledge_instances())
    def test_agrees_with_brute_force(self, instance):
        spec, knowledge = instance
        partition = partition_for(spec)
        assert partial_decisions(spec, knowledge, partition) == brute_force_decisions(
            spec, knowledge, partition
        )

    @pytest.mark.unit
    @settings(max_examples=100, deadline=None)
    @given(knowledge_instances(), st.data())
    def test_refinement_keeps_forced_decisions(self, instance, data):
        spec, knowledge = instance
        partition = partition_for(spec)
        before = partial_decisions(spec, knowledge, partition)
        index = data.draw(st.integers(min_value=0, max_value=spec.m - 1))
        entry = knowledge[index]
        cell = data.draw(st.integers(min_value=entry.lo, max_value=entry.hi))
        entries = list(knowledge)
        entries[index] = CellRange.decided(cell)
        after = partial_decisions(spec, KnowledgeVector(tuple(entries)), partition)
        assert before.forced_reject <= after.forced_reject
        assert before.forced_accept <= after.forced_accept

    @pytest.mark.unit
    @settings(max_examples=100, deadline=None)
    @given(knowledge_instances(max_m=8))
    def test_full_knowledge_matches_exact_evaluation(self, instance):
        spec, knowledge = instance
        partition = partition_for(spec)
        cells = [entry.lo for entry in knowledge]
        decided = KnowledgeVector.from_ranges([(c, c) for c in cells])
        state = partial_decisions(spec, decided, partition)
        edges = np.asarray(partition.boundary_points)
        midpoints = (edges[cells] + edges[np.asarray(cells) + 1]) / 2.0
        assert state.undecided == frozenset()
        assert state.forced_reject == evaluate_exact(spec, midpoints)


class TestUndecidedCount:
    """Undecided counts with the smallest-D hypotheses left unresolved."""

    @pytest.mark.unit
    def test_full_knowledge_leaves_nothing(self, bh4):
        rng = np.random.default_rng(0)
        for _ in range(20):
            assert undecided_count_experiment(bh4, rng.random(4), 0) == 0

    @pytest.mark.unit
    def test_everything_unresolved_is_bounded(self, bh4):
        assert undecided_count_experiment(bh4, [0.01, 0.3, 0.06, 0.9], 4) <= 4

    @pytest.mark.unit
    def test_region_a_vector(self, bh3):
        assert undecided_count_experiment(bh3, [0.08, 0.085, 0.099], 1) == 3

    @pytest.mark.unit
    def test_too_many_left_undecided(self, bh4):
        with pytest.raises(RejectedInputError):
            undecided_count_experiment(bh4, [0.1, 0.2, 0.3, 0.4], 5)

    @pytest.mark.unit
    def test_closest_to_boundary_hidden(self, bh4_partition):
        # distances: 0.001, 0.0125, 0.005, 0.4
        knowledge = knowledge_leaving_undecided(
            [0.026, 0.0625, 0.08, 0.6], bh4_partition, 2
        )
        assert knowledge.undecided_entries == [0, 2]
        assert knowledge[1] == CellRange.decided(2)
        assert knowledge[3] == CellRange.decided(4)

    @pytest.mark.unit
    def test_ties_keep_lower_index(self, bh4_partition):
        knowledge = knowledge_leaving_undecided([0.5, 0.5, 0.5, 0.5], bh4_partition, 1)
        assert knowledge.undecided_entries == [0]
