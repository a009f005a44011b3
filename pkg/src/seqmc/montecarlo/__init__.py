"""Monte Carlo simulation of sequentially sampled hypotheses.

Provides:
- PriorSpec / sample_prior: true p-value priors (uniform, mixture, region A, point mass)
- StreamSeed / bernoulli_stream: splittable, reproducible exceedance streams
- HypothesisState, StoppingRecord, RepetitionRecord: sampling state and results
- run_hypothesis: the per-hypothesis sampling loop with both stopping times
- run_experiment: repetitions over a worker pool with deterministic output
"""

from .experiment import (
    RepetitionTask,
    decision_timeline,
    run_experiment,
    run_repetition,
)
from .priors import PriorKind, PriorSpec, region_a_margin, sample_prior
from .sampler import resolve_engine, resolve_schedule, run_hypothesis
from .state import HypothesisState, RepetitionRecord, StoppingRecord
from .streams import BernoulliStream, SeedDomain, StreamSeed, bernoulli_stream


__all__ = [
    # Priors
    "PriorKind",
    "PriorSpec",
    "sample_prior",
    "region_a_margin",
    # Streams
    "StreamSeed",
    "SeedDomain",
    "BernoulliStream",
    "bernoulli_stream",
    # State
    "HypothesisState",
    "StoppingRecord",
    "RepetitionRecord",
    # Sampling
    "run_hypothesis",
    "resolve_engine",
    "resolve_schedule",
    # Experiments
    "RepetitionTask",
    "run_repetition",
    "run_experiment",
    "decision_timeline",
]
