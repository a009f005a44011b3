"""Thresholds and exact evaluation of Bonferroni, BH and Holm.

All three procedures are evaluated through threshold ranks: the rank of a
p-value is the smallest k with p <= alpha_k, or L+1 when p exceeds every one
of the L thresholds. Rejection then only depends on the rank vector.
"""

import numpy as np

from ..errors import RejectedInputError
from ..partition import ThresholdPartition, build_partition
from .models import ProcedureKind, ProcedureSpec


def procedure_thresholds(spec: ProcedureSpec) -> tuple[float, ...]:
    """Ascending thresholds of a procedure.

    BH uses i*alpha/m, Holm alpha/(m-i+1) and Bonferroni the single value
    alpha/m.
    """
    m, alpha = spec.m, spec.alpha
    if spec.kind is ProcedureKind.BONFERRONI:
        return (alpha / m,)
    if spec.kind is ProcedureKind.BH:
        return tuple(i * alpha / m for i in range(1, m + 1))
    return tuple(alpha / (m - i + 1) for i in range(1, m + 1))


def partition_for(spec: ProcedureSpec) -> ThresholdPartition:
    return build_partition(procedure_thresholds(spec))


def _reject_from_ranks(kind: ProcedureKind, ranks: np.ndarray) -> np.ndarray:
    """Rejection mask for each row of an integer rank matrix (rows x m)."""
    ranks = np.atleast_2d(ranks)
    if kind is ProcedureKind.BONFERRONI:
        return ranks <= 1

    m = ranks.shape[1]
    sorted_ranks = np.sort(ranks, axis=1)
    positions = np.arange(1, m + 1)
    passes = sorted_ranks <= positions

    if kind is ProcedureKind.BH:
        # Largest k with p_(k) <= alpha_k, 0 when none.
        cutoff = np.where(passes.any(axis=1), m - np.argmax(passes[:, ::-1], axis=1), 0)
    else:
        # Number of leading k with p_(k) <= alpha_k.
        cutoff = np.where(passes.all(axis=1), m, np.argmin(passes, axis=1))
    return ranks <= cutoff[:, None]


def _check_pvalues(pvalues: np.ndarray) -> None:
    if np.isnan(pvalues).any() or (pvalues < 0.0).any() or (pvalues > 1.0).any():
        raise RejectedInputError("p-values must lie in [0, 1]")


def evaluate_exact_batch(spec: ProcedureSpec, pvalues) -> np.ndarray:
    """Boolean rejection matrix for a matrix of p-value vectors (one per row)."""
    matrix = np.atleast_2d(np.asarray(pvalues, dtype=float))
    if matrix.shape[1] != spec.m:
        raise RejectedInputError(
            f"expected {spec.m} p-values per row, got {matrix.shape[1]}"
        )
    _check_pvalues(matrix)
    thresholds = np.asarray(procedure_thresholds(spec))
    ranks = np.searchsorted(thresholds, matrix, side="left") + 1
    return _reject_from_ranks(spec.kind, ranks)


def evaluate_exact(spec: ProcedureSpec, pvalues) -> frozenset[int]:
    """Indices (0-based) rejected by the procedure on known p-values.

    Raises:
        RejectedInputError: If a p-value lies outside [0, 1] or the vector
            length differs from ``spec.m``.
    """
    mask = evaluate_exact_batch(spec, np.asarray(pvalues, dtype=float)[None, :])[0]
    return frozenset(int(i) for i in np.flatnonzero(mask))
