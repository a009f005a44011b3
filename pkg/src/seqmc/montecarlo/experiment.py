"""Repetitions of a full multiple-testing experiment, serial or on a worker pool."""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..confseq.models import SpendingSchedule
from ..errors import RejectedInputError
from ..procedures.decisions import corner_decisions
from ..procedures.evaluate import partition_for, procedure_thresholds
from ..procedures.models import DecisionState, ProcedureSpec
from .priors import PriorSpec, sample_prior
from .sampler import resolve_engine, resolve_schedule, run_hypothesis
from .state import RepetitionRecord, StoppingRecord
from .streams import StreamSeed

logger = logging.getLogger(__name__)

STOPPING_TIME_KINDS = ("operational", "theoretical")


@dataclass(frozen=True)
class RepetitionTask:
    """Picklable description of one repetition."""

    prior: PriorSpec
    spec: ProcedureSpec
    engine: str
    schedule: SpendingSchedule
    cap: int
    master_seed: int
    repetition: int
    stopping_time: str = "operational"


def decision_timeline(
    spec: ProcedureSpec,
    records: list[StoppingRecord],
    stopping_time: str = "operational",
) -> tuple[DecisionState, int, int, bool]:
    """Decision state after every hypothesis stopped, plus when decisions appeared.

    Before its stopping time a hypothesis is fully unknown; from then on it
    contributes the cells it stopped in. Returns the final state, the first
    time any decision is forced, the first time none is left undecided, and
    whether that ever happens (both times fall back to the cap).
    """
    m = spec.m
    cells = len(procedure_thresholds(spec))
    cap = max(record.cap for record in records)
    times = np.array([record.stopping_time(stopping_time) for record in records])
    order = np.argsort(times, kind="stable")

    # Row k holds the knowledge once the k earliest hypotheses have stopped.
    lo = np.zeros((m + 1, m), dtype=np.int64)
    hi = np.full((m + 1, m), cells, dtype=np.int64)
    for step, index in enumerate(order, start=1):
        knowledge = records[index].knowledge()
        lo[step:, index] = knowledge.lo
        hi[step:, index] = knowledge.hi

    reject_at_max, reject_at_min = corner_decisions(spec, lo, hi)
    undecided = reject_at_min & ~reject_at_max
    undecided_counts = undecided.sum(axis=1)
    row_times = np.concatenate(([0], times[order]))

    some_forced = np.flatnonzero(undecided_counts < m)
    first = int(row_times[some_forced[0]]) if some_forced.size else cap
    complete = np.flatnonzero(undecided_counts == 0)
    full = int(row_times[complete[0]]) if complete.size else cap

    final = DecisionState(
        forced_reject=frozenset(int(i) for i in np.flatnonzero(reject_at_max[-1])),
        forced_accept=frozenset(int(i) for i in np.flatnonzero(~reject_at_min[-1])),
        undecided=frozenset(int(i) for i in np.flatnonzero(undecided[-1])),
    )
    return final, first, full, bool(complete.size)


def run_repetition(task: RepetitionTask) -> RepetitionRecord:
    """Sample one p-vector, run every hypothesis and derive the decisions."""
    partition = partition_for(task.spec)
    seed = StreamSeed(task.master_seed, task.repetition)
    pvalues = sample_prior(task.prior, task.spec.m, seed, partition.thresholds)
    records = [
        run_hypothesis(
            float(p), task.engine, partition, task.schedule, task.cap, seed.for_hypothesis(i)
        )
        for i, p in enumerate(pvalues)
    ]
    decisions, first, full, complete = decision_timeline(
        task.spec, records, task.stopping_time
    )
    return RepetitionRecord(
        repetition=task.repetition,
        pvalues=tuple(float(p) for p in pvalues),
        records=tuple(records),
        decisions=decisions,
        first_decision_time=first,
        full_decision_time=full,
        fully_decided=complete,
    )


def run_experiment(
    prior: PriorSpec,
    spec: ProcedureSpec,
    engine: str,
    epsilon: float | SpendingSchedule,
    cap: int,
    repetitions: int,
    master_seed: int,
    *,
    workers: int = 1,
    stopping_time: str = "operational",
) -> list[RepetitionRecord]:
    """Run ``repetitions`` independent repetitions, ordered by repetition index.

    Output depends only on the arguments other than ``workers``: each
    repetition draws from its own substreams, and pool results are collected
    in submission order.

    Raises:
        RejectedInputError: On negative repetitions, a non-positive worker
            count, an unknown engine or stopping-time kind.
    """
    if repetitions < 0:
        raise RejectedInputError(f"repetitions must be >= 0, got {repetitions}")
    if workers < 1:
        raise RejectedInputError(f"workers must be >= 1, got {workers}")
    if stopping_time not in STOPPING_TIME_KINDS:
        raise RejectedInputError(
            f"stopping_time must be one of {STOPPING_TIME_KINDS}, got '{stopping_time}'"
        )
    resolve_engine(engine)
    schedule = resolve_schedule(epsilon)
    StreamSeed(master_seed)  # validates the seed range

    tasks = [
        RepetitionTask(prior, spec, engine, schedule, cap, master_seed, r, stopping_time)
        for r in range(repetitions)
    ]
    logger.info(
        "running %d repetitions (m=%d, engine=%s, cap=%d, workers=%d)",
        repetitions,
        spec.m,
        engine,
        cap,
        workers,
    )
    if workers == 1 or repetitions <= 1:
        results = [run_repetition(task) for task in tasks]
    else:
        chunksize = max(1, repetitions // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_repetition, tasks, chunksize=chunksize))

    truncated = sum(record.truncated for rep in results for record in rep.records)
    total = sum(len(rep.records) for rep in results)
    if total and truncated / total > 0.01:
        logger.warning(
            "%.1f%% of hypotheses hit the cap of %d draws", 100.0 * truncated / total, cap
        )
    return results

