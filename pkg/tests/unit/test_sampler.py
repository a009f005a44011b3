"""Unit tests for the per-hypothesis sampling loop."""

import numpy as np
import pytest

from seqmc.confseq import (
    ClopperPearsonSequence,
    EngineCarry,
    SpendingSchedule,
    lemma1_length_bound,
)
from seqmc.errors import RejectedInputError
from seqmc.montecarlo import StoppingRecord, StreamSeed, bernoulli_stream, run_hypothesis
from seqmc.montecarlo import sampler


class TestRunHypothesis:
    """Stopping times of a single hypothesis."""

    @pytest.mark.unit
    def test_far_from_thresholds_decides_quickly(self, bh4_partition):
        times = []
        for seed in range(100):
            record = run_hypothesis(0.5, "cp", bh4_partition, 0.01, 10**4, StreamSeed(seed))
            assert record.decided_cell == 4
            assert record.correct
            times.append(record.tau_operational)
        assert sum(t <= 300 for t in times) >= 99

    @pytest.mark.unit
    def test_on_boundary(self, bh4_partition):
        record = run_hypothesis(0.05, "cp", bh4_partition, 0.01, 500, StreamSeed(1))
        assert record.on_boundary
        assert record.D == 0.0
        assert record.tau_operational == record.tau_theoretical == 500
        assert record.truncated and record.theoretical_truncated
        assert record.knowledge().width == bh4_partition.cell_count

    @pytest.mark.unit
    def test_cap_of_one(self, bh4_partition):
        record = run_hypothesis(0.3, "cp", bh4_partition, 0.01, 1, StreamSeed(4))
        assert record.tau_operational == 1
        assert record.tau_theoretical == 1
        assert record.truncated
        assert record.decided_cell is None
        assert record.correct is None

    @pytest.mark.unit
    @pytest.mark.parametrize("true_p", [0.2, 0.5, 0.9])
    @pytest.mark.parametrize("engine", ["cp", "robbins"])
    def test_decided_no_later_than_theoretical_time(self, bh4_partition, true_p, engine):
        record = run_hypothesis(true_p, engine, bh4_partition, 0.01, 10**5, StreamSeed(3))
        assert not record.theoretical_truncated
        assert record.tau_operational <= record.tau_theoretical
        assert record.final_interval.n == max(record.tau_operational, record.tau_theoretical)
        assert record.tau_operational >= 1

    @pytest.mark.unit
    def test_truncated_time_equals_cap(self, bh4_partition):
        record = run_hypothesis(0.0501, "cp", bh4_partition, 0.01, 3000, StreamSeed(2))
        assert record.truncated
        assert record.tau_operational == 3000
        lo, hi = record.final_cells
        assert lo <= bh4_partition.cell_of(0.0501) <= hi

    @pytest.mark.unit
    def test_deterministic(self, bh4_partition):
        a = run_hypothesis(0.07, "cp", bh4_partition, 0.01, 10**4, StreamSeed(8, 2, 1))
        b = run_hypothesis(0.07, "cp", bh4_partition, 0.01, 10**4, StreamSeed(8, 2, 1))
        assert a == b

    @pytest.mark.unit
    def test_block_size_does_not_change_times(self, bh4_partition, monkeypatch):
        seed = StreamSeed(21)
        reference = run_hypothesis(0.2, "cp", bh4_partition, 0.01, 20000, seed)
        monkeypatch.setattr(sampler, "FIRST_BLOCK", 7)
        monkeypatch.setattr(sampler, "MAX_BLOCK", 50)
        small_blocks = run_hypothesis(0.2, "cp", bh4_partition, 0.01, 20000, seed)
        assert small_blocks.tau_operational == reference.tau_operational
        assert small_blocks.tau_theoretical == reference.tau_theoretical
        assert small_blocks.final_interval.lower == pytest.approx(reference.final_interval.lower)

    @pytest.mark.unit
    def test_accepts_schedule(self, bh4_partition):
        record = run_hypothesis(
            0.5, "cp", bh4_partition, SpendingSchedule(0.01), 1000, StreamSeed(1)
        )
        assert record.decided_cell == 4

    @pytest.mark.unit
    def test_invalid_cap(self, bh4_partition):
        with pytest.raises(RejectedInputError):
            run_hypothesis(0.5, "cp", bh4_partition, 0.01, 0, StreamSeed(1))

    @pytest.mark.unit
    def test_unknown_engine(self, bh4_partition):
        with pytest.raises(RejectedInputError):
            run_hypothesis(0.5, "bootstrap", bh4_partition, 0.01, 10, StreamSeed(1))

    @pytest.mark.unit
    def test_record_round_trip(self, bh4_partition):
        record = run_hypothesis(0.2, "cp", bh4_partition, 0.01, 1000, StreamSeed(5))
        assert StoppingRecord.from_dict(record.to_dict()) == record


class TestClopperPearsonLength:
    """Reported CP intervals never exceed the analytic length bound."""

    @pytest.mark.unit
    @pytest.mark.parametrize("true_p", [0.02, 0.3, 0.5, 0.97])
    def test_every_step_within_bound(self, true_p):
        schedule = SpendingSchedule(0.01)
        n = np.arange(1, 1001)
        per_side = schedule.levels(n) / 2.0
        limits = np.array([lemma1_length_bound(int(k), float(r)) for k, r in zip(n, per_side)])
        worst = 0.0
        for seed in range(25):
            stream = bernoulli_stream(true_p, StreamSeed(seed))
            s = np.cumsum(stream.take(n.size), dtype=np.int64)
            bounds = ClopperPearsonSequence().running_bounds(n, s, schedule, EngineCarry())
            worst = max(worst, float(np.max(bounds.length / limits)))
        assert worst <= 1.0 + 1e-12

    @pytest.mark.unit
    @pytest.mark.parametrize("true_p", [0.03, 0.2, 0.6])
    def test_recorded_interval_within_bound(self, bh4_partition, true_p):
        schedule = SpendingSchedule(0.01)
        for seed in range(20):
            record = run_hypothesis(true_p, "cp", bh4_partition, schedule, 5000, StreamSeed(seed))
            interval = record.final_interval
            limit = lemma1_length_bound(interval.n, schedule.level(interval.n) / 2.0)
            assert interval.length <= limit + 1e-12
