"""Sequential sampling loop for one hypothesis."""

import logging

import numpy as np

from ..confseq.engines import EngineCarry, SequenceEngine, create_default_registry
from ..confseq.models import IntervalEstimate, SpendingSchedule
from ..errors import RejectedInputError
from ..partition import ThresholdPartition, classify_arrays, min_boundary_distance
from .state import StoppingRecord
from .streams import StreamSeed, bernoulli_stream

logger = logging.getLogger(__name__)

FIRST_BLOCK = 256
MAX_BLOCK = 65536

_ENGINES = create_default_registry()


def resolve_engine(engine: str | SequenceEngine) -> SequenceEngine:
    if isinstance(engine, str):
        return _ENGINES.get(engine)
    return engine


def resolve_schedule(epsilon: float | SpendingSchedule) -> SpendingSchedule:
    if isinstance(epsilon, SpendingSchedule):
        return epsilon
    return SpendingSchedule(float(epsilon))


def run_hypothesis(
    true_p: float,
    engine: str | SequenceEngine,
    partition: ThresholdPartition,
    epsilon: float | SpendingSchedule,
    cap: int,
    seed: StreamSeed,
) -> StoppingRecord:
    """Sample one hypothesis until both stopping times are known or ``cap`` is hit.

    The operational time is the first n whose interval classifies Decided;
    the theoretical time is the first n with |p_hat - p| < D/2 and interval
    length < D/2. Draws are consumed in doubling blocks, so the recorded
    times are exact draw counts.

    Raises:
        RejectedInputError: If ``cap`` < 1 or ``true_p`` lies outside [0, 1].
    """
    if cap < 1:
        raise RejectedInputError(f"cap must be >= 1, got {cap}")
    sequence = resolve_engine(engine)
    schedule = resolve_schedule(epsilon)
    D = min_boundary_distance(true_p, partition)
    true_cell = partition.cell_of(true_p)

    if D == 0.0:
        logger.debug("true p=%g sits on a partition boundary; not sampled", true_p)
        return StoppingRecord(
            true_p=true_p,
            D=0.0,
            cap=cap,
            tau_operational=cap,
            tau_theoretical=cap,
            truncated=True,
            theoretical_truncated=True,
            true_cell=true_cell,
            on_boundary=True,
            final_cells=(0, partition.m),
        )

    stream = bernoulli_stream(true_p, seed)
    carry = EngineCarry()
    drawn, exceedances = 0, 0
    tau_operational = tau_theoretical = None
    decided_cell = None
    block = FIRST_BLOCK
    final = None

    while drawn < cap:
        k = min(block, cap - drawn)
        n = np.arange(drawn + 1, drawn + k + 1)
        s = exceedances + np.cumsum(stream.take(k), dtype=np.int64)
        bounds = sequence.running_bounds(n, s, schedule, carry)

        if tau_operational is None:
            cells = classify_arrays(bounds.lower, bounds.upper, partition)
            hits = np.flatnonzero(cells >= 0)
            if hits.size:
                tau_operational = int(n[hits[0]])
                decided_cell = int(cells[hits[0]])

        if tau_theoretical is None:
            close = np.abs(s / n - true_p) < D / 2.0
            hits = np.flatnonzero(close & (bounds.length < D / 2.0))
            if hits.size:
                tau_theoretical = int(n[hits[0]])

        drawn, exceedances = int(n[-1]), int(s[-1])
        if tau_operational is not None and tau_theoretical is not None:
            stop = max(tau_operational, tau_theoretical)
            final = (bounds, stop - int(n[0]), stop)
            break
        final = (bounds, k - 1, drawn)
        block = min(2 * block, MAX_BLOCK)

    bounds, index, stop = final
    interval = IntervalEstimate(
        lower=float(bounds.lower[index]),
        upper=float(bounds.upper[index]),
        n=stop,
        risk_spent=float(bounds.risk_spent[index]),
        degenerate=bool(bounds.degenerate[index]),
    )
    truncated = tau_operational is None
    if truncated:
        logger.debug("p=%g (D=%g) undecided after cap=%d draws", true_p, D, cap)

    return StoppingRecord(
        true_p=true_p,
        D=D,
        cap=cap,
        tau_operational=cap if truncated else tau_operational,
        tau_theoretical=cap if tau_theoretical is None else tau_theoretical,
        truncated=truncated,
        theoretical_truncated=tau_theoretical is None,
        true_cell=true_cell,
        decided_cell=decided_cell,
        final_cells=partition.cell_range(interval.lower, interval.upper),
        final_interval=interval,
    )
