"""Anytime coverage audit of the confidence sequences."""

import logging
import math

import numpy as np
from scipy import stats

from ..confseq.engines import EngineCarry, create_default_registry
from ..confseq.models import SpendingSchedule
from ..confseq.robbins import robbins_excludes
from ..montecarlo.streams import StreamSeed, bernoulli_stream
from .base import AuditResult, Violation, audit

logger = logging.getLogger(__name__)

COVERAGE_ENGINES = ("cp", "robbins")
ENGINE_CHECK_STREAMS = 100
_STREAMS_PER_BATCH = 50


def _cp_ever_excludes(n: np.ndarray, s: np.ndarray, p: float, tail: np.ndarray) -> np.ndarray:
    # p lies below the step-n lower endpoint iff P(X >= S | p) < tail, above
    # the upper one iff P(X <= S | p) < tail
    below = stats.binom.sf(s - 1, n, p) < tail
    above = stats.binom.cdf(s, n, p) < tail
    return np.any(below | above, axis=-1)


def _robbins_ever_excludes(n: np.ndarray, s: np.ndarray, p: float, epsilon: float) -> np.ndarray:
    return np.any(robbins_excludes(n, s, p, epsilon), axis=-1)


def _cumulative_counts(p: float, horizon: int, seeds: list[StreamSeed]) -> np.ndarray:
    return np.stack(
        [np.cumsum(bernoulli_stream(p, seed).take(horizon), dtype=np.int64) for seed in seeds]
    )


def miss_flags(
    engine: str,
    p: float,
    epsilon: float,
    horizon: int,
    streams: int,
    master_seed: int,
    stream_key: int = 0,
) -> np.ndarray:
    """Per stream, whether the sequence excludes ``p`` at some n <= horizon.

    Computed from the tail equations directly. For the Clopper-Pearson
    sequence a miss of any single step counts, which is what the running
    intersection sees.
    """
    flags = np.zeros(streams, dtype=bool)
    n = np.arange(1, horizon + 1)
    tail = SpendingSchedule(epsilon).levels(n) / 2.0
    for start in range(0, streams, _STREAMS_PER_BATCH):
        stop = min(start + _STREAMS_PER_BATCH, streams)
        seeds = [StreamSeed(master_seed, r, stream_key) for r in range(start, stop)]
        s = _cumulative_counts(p, horizon, seeds)
        if engine == "cp":
            flags[start:stop] = _cp_ever_excludes(n, s, p, tail)
        else:
            flags[start:stop] = _robbins_ever_excludes(n, s, p, epsilon)
    return flags


def engine_miss_flags(
    engine: str,
    p: float,
    epsilon: float,
    horizon: int,
    streams: int,
    master_seed: int,
    stream_key: int = 0,
) -> np.ndarray:
    """Same streams as ``miss_flags``, judged by the intervals the engine reports."""
    sequence = create_default_registry().get(engine)
    schedule = SpendingSchedule(epsilon)
    n = np.arange(1, horizon + 1)
    flags = np.zeros(streams, dtype=bool)
    for r in range(streams):
        s = _cumulative_counts(p, horizon, [StreamSeed(master_seed, r, stream_key)])[0]
        bounds = sequence.running_bounds(n, s, schedule, EngineCarry())
        flags[r] = bool(np.any((p < bounds.lower) | (p > bounds.upper)))
    return flags


def miscoverage_fraction(
    engine: str,
    p: float,
    epsilon: float,
    horizon: int,
    streams: int,
    master_seed: int,
    stream_key: int = 0,
) -> float:
    """Fraction of streams whose sequence excludes ``p`` at some n <= horizon."""
    if streams == 0:
        return 0.0
    flags = miss_flags(engine, p, epsilon, horizon, streams, master_seed, stream_key)
    return float(flags.mean())


def coverage_tolerance(epsilon: float, streams: int) -> float:
    return epsilon + 3.0 * math.sqrt(epsilon * (1.0 - epsilon) / max(streams, 1))


def _engine_cross_check(config, engine: str, p: float, key: int) -> tuple[dict, list[Violation]]:
    """Replay the first streams of one cell through the registered engine."""
    streams = min(config.repetitions, ENGINE_CHECK_STREAMS)
    args = (engine, p, config.epsilon, config.coverage_horizon, streams, config.master_seed, key)
    expected = miss_flags(*args)
    reported = engine_miss_flags(*args)
    unexplained = np.flatnonzero(reported & ~expected)
    fraction = float(reported.mean()) if streams else 0.0
    violations = [
        Violation(
            {"engine": engine, "p": p, "stream": int(r)},
            "engine interval excludes p where the tail equations do not",
        )
        for r in unexplained
    ]
    subset_limit = coverage_tolerance(config.epsilon, streams)
    if fraction > subset_limit:
        violations.append(
            Violation(
                {"engine": engine, "p": p, "fraction": fraction},
                f"engine-path miscoverage above tolerance {subset_limit:.4f}",
            )
        )
    return {"streams": streams, "fraction": fraction, "unexplained": len(unexplained)}, violations


@audit(
    name="anytime-coverage",
    description="Ever-miscoverage of CP-with-spending and Robbins sequences within eps + 3 SE",
    group="coverage-audit",
)
def anytime_coverage(config) -> AuditResult:
    streams = config.repetitions
    limit = coverage_tolerance(config.epsilon, streams)
    violations = []
    fractions = {}
    engine_path = {}
    cells = [(engine, p) for engine in COVERAGE_ENGINES for p in config.coverage_p]
    for key, (engine, p) in enumerate(cells):
        logger.info("coverage: engine=%s p=%g over %d streams", engine, p, streams)
        fraction = miscoverage_fraction(
            engine, p, config.epsilon, config.coverage_horizon, streams, config.master_seed, key
        )
        fractions[f"{engine}@{p}"] = fraction
        if fraction > limit:
            violations.append(
                Violation(
                    {"engine": engine, "p": p, "fraction": fraction},
                    f"miscoverage above tolerance {limit:.4f}",
                )
            )
        if p == config.coverage_p[0]:
            details, found = _engine_cross_check(config, engine, p, key)
            engine_path[f"{engine}@{p}"] = details
            violations.extend(found)
    return AuditResult.from_violations(
        "anytime-coverage",
        violations,
        f"{len(fractions)} cells, tolerance {limit:.4f}, worst "
        f"{max(fractions.values(), default=0.0):.4f}",
        {
            "fractions": fractions,
            "engine_path": engine_path,
            "tolerance": limit,
            "streams": streams,
        },
    )


COVERAGE_AUDITS = [anytime_coverage]
