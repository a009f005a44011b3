"""Anytime-valid binomial confidence sequences.

Provides:
- BinomialCount, IntervalEstimate, SpendingSchedule: core value types
- cp_exact_interval / robbins_interval / normal_interval: single-step intervals
- cp_sequence_update: one step of the spending-based Clopper-Pearson sequence
- Engines and EngineRegistry: block-wise sequences used by the sampler
- Length bounds and Hoeffding tails
"""

from .bounds import (
    hoeffding_tail,
    length_exponent_ratio,
    lemma1_length_bound,
    lemma2_length_bound,
)
from .clopper_pearson import cp_exact_interval, cp_interval_arrays
from .engines import (
    BoundsBlock,
    ClopperPearsonSequence,
    EngineCarry,
    EngineRegistry,
    NormalSequence,
    RobbinsSequence,
    SequenceEngine,
    create_default_registry,
)
from .models import (
    BinomialCount,
    IntervalEstimate,
    SpendingRule,
    SpendingSchedule,
    spending_level,
)
from .normal import normal_interval, normal_interval_arrays
from .robbins import (
    robbins_excludes,
    robbins_interval,
    robbins_interval_arrays,
    robbins_log_statistic,
)
from .sequence import cp_sequence_update, reconcile_arrays


__all__ = [
    # Models
    "BinomialCount",
    "IntervalEstimate",
    "SpendingRule",
    "SpendingSchedule",
    "spending_level",
    # Intervals
    "cp_exact_interval",
    "cp_interval_arrays",
    "robbins_interval",
    "robbins_interval_arrays",
    "robbins_log_statistic",
    "robbins_excludes",
    "normal_interval",
    "normal_interval_arrays",
    # Sequences
    "cp_sequence_update",
    "reconcile_arrays",
    "SequenceEngine",
    "EngineCarry",
    "BoundsBlock",
    "ClopperPearsonSequence",
    "RobbinsSequence",
    "NormalSequence",
    "EngineRegistry",
    "create_default_registry",
    # Bounds
    "lemma1_length_bound",
    "lemma2_length_bound",
    "hoeffding_tail",
    "length_exponent_ratio",
]
