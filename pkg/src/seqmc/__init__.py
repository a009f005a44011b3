"""seqmc - sequential Monte Carlo multiple testing.

v0.1.0 Features:
- Anytime-valid confidence sequences (Clopper-Pearson spending, Robbins mixture)
- Threshold partitions and partial decisions of step-up/step-down procedures
- Multi-hypothesis sampling with deterministic per-stream seeding
- Stopping-time analysis: Wald bound, truncated means, tail fits
- Audits of the length, coverage and decision guarantees
"""

from .analysis import SurvivalCurve, empirical_survival, truncated_mean, wald_lower_bound
from .config import ExperimentConfig, load_config
from .confseq import ClopperPearsonSequence, RobbinsSequence, SpendingSchedule
from .errors import ConfigError, RejectedInputError, SeqMCError
from .montecarlo import PriorSpec, StreamSeed, run_experiment, run_hypothesis
from .partition import ThresholdPartition, build_partition, classify
from .procedures import ProcedureKind, ProcedureSpec, evaluate_exact, partial_decisions

__version__ = "0.1.0"
__all__ = [
    # Errors
    "SeqMCError",
    "RejectedInputError",
    "ConfigError",
    # Config
    "ExperimentConfig",
    "load_config",
    # Confidence sequences
    "SpendingSchedule",
    "ClopperPearsonSequence",
    "RobbinsSequence",
    # Partition
    "ThresholdPartition",
    "build_partition",
    "classify",
    # Procedures
    "ProcedureKind",
    "ProcedureSpec",
    "evaluate_exact",
    "partial_decisions",
    # Monte Carlo
    "PriorSpec",
    "StreamSeed",
    "run_hypothesis",
    "run_experiment",
    # Analysis
    "SurvivalCurve",
    "empirical_survival",
    "truncated_mean",
    "wald_lower_bound",
]
