"""Multiple-testing procedures and forced decisions under partial knowledge.

Provides:
- ProcedureSpec / ProcedureKind: Bonferroni, Benjamini-Hochberg, Holm
- procedure_thresholds, partition_for, evaluate_exact: exact evaluation
- partial_decisions: corner-completion decisions from cell ranges
- brute_force_decisions: exhaustive oracle for small m
- undecided_count_experiment: the undecided count of the survival experiment
"""

from .decisions import (
    BRUTE_FORCE_MAX_M,
    brute_force_decisions,
    corner_decisions,
    knowledge_leaving_undecided,
    partial_decisions,
    undecided_count_experiment,
)
from .evaluate import (
    evaluate_exact,
    evaluate_exact_batch,
    partition_for,
    procedure_thresholds,
)
from .models import (
    CellRange,
    DecisionState,
    KnowledgeVector,
    ProcedureKind,
    ProcedureSpec,
)


__all__ = [
    # Models
    "ProcedureKind",
    "ProcedureSpec",
    "CellRange",
    "KnowledgeVector",
    "DecisionState",
    # Evaluation
    "procedure_thresholds",
    "partition_for",
    "evaluate_exact",
    "evaluate_exact_batch",
    # Decisions
    "partial_decisions",
    "corner_decisions",
    "brute_force_decisions",
    "knowledge_leaving_undecided",
    "undecided_count_experiment",
    "BRUTE_FORCE_MAX_M",
]
