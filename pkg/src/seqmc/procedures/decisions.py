"""Decisions that are already forced when p-values are only partly known.

Knowledge about hypothesis i is a cell range [lo_i, hi_i] of the procedure's
own threshold partition. Inside cell j a p-value satisfies p <= alpha_k
exactly for k >= j+1 (the left endpoint alpha_j itself has probability zero),
so the completions of the knowledge are the rank vectors r with
lo_i + 1 <= r_i <= hi_i + 1. Every rejection indicator is antitone in r, so
the two corners decide everything: a hypothesis is forced to reject when it
is rejected with every rank at its maximum, and forced to accept when it is
not rejected with every rank at its minimum.
"""

import itertools
import logging

import numpy as np

from ..errors import RejectedInputError
from ..partition import ThresholdPartition, boundary_distances
from .evaluate import (
    _reject_from_ranks,
    evaluate_exact_batch,
    partition_for,
    procedure_thresholds,
)
from .models import CellRange, DecisionState, KnowledgeVector, ProcedureSpec

logger = logging.getLogger(__name__)

BRUTE_FORCE_MAX_M = 12
_ORACLE_POINTS = (0.25, 0.75)


def _check_knowledge(
    spec: ProcedureSpec, knowledge: KnowledgeVector, partition: ThresholdPartition
) -> None:
    thresholds = procedure_thresholds(spec)
    if len(thresholds) != partition.m or not np.allclose(
        thresholds, partition.thresholds, rtol=1e-12, atol=0.0
    ):
        raise RejectedInputError(
            f"partition thresholds do not match the {spec.kind.value} procedure "
            f"at alpha={spec.alpha}, m={spec.m}"
        )
    if len(knowledge) != spec.m:
        raise RejectedInputError(
            f"knowledge has {len(knowledge)} entries, procedure has m={spec.m}"
        )
    if any(entry.hi > partition.m for entry in knowledge):
        raise RejectedInputError(f"cell index beyond the last cell {partition.m}")


def _state_from_masks(reject_at_max: np.ndarray, reject_at_min: np.ndarray) -> DecisionState:
    forced_reject = frozenset(int(i) for i in np.flatnonzero(reject_at_max))
    forced_accept = frozenset(int(i) for i in np.flatnonzero(~reject_at_min))
    undecided = frozenset(int(i) for i in np.flatnonzero(reject_at_min & ~reject_at_max))
    return DecisionState(forced_reject, forced_accept, undecided)


def corner_decisions(
    spec: ProcedureSpec, lo: np.ndarray, hi: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Rejection masks at the maximal and minimal rank corners, row-wise.

    ``lo`` and ``hi`` are (rows x m) cell-index matrices; no validation.
    Returns ``(reject_at_max, reject_at_min)``: the first is the forced-reject
    mask, the complement of the second the forced-accept mask.
    """
    reject_at_max = _reject_from_ranks(spec.kind, np.atleast_2d(hi) + 1)
    reject_at_min = _reject_from_ranks(spec.kind, np.atleast_2d(lo) + 1)
    return reject_at_max, reject_at_min


def partial_decisions(
    spec: ProcedureSpec,
    knowledge: KnowledgeVector,
    partition: ThresholdPartition,
) -> DecisionState:
    """Split hypotheses into forced reject, forced accept and undecided.

    Raises:
        RejectedInputError: If the partition is not the procedure's own, or
            the knowledge vector has the wrong length or out-of-range cells.
    """
    _check_knowledge(spec, knowledge, partition)
    lo = np.array([entry.lo for entry in knowledge])
    hi = np.array([entry.hi for entry in knowledge])
    reject_at_max, reject_at_min = corner_decisions(spec, lo, hi)
    return _state_from_masks(reject_at_max[0], reject_at_min[0])


def brute_force_decisions(
    spec: ProcedureSpec,
    knowledge: KnowledgeVector,
    partition: ThresholdPartition,
    chunk_size: int = 65536,
) -> DecisionState:
    """Exhaustive oracle for ``partial_decisions``.

    Enumerates every assignment of hypotheses to compatible cells and
    evaluates the procedure on actual p-values at two interior points of each
    cell. A hypothesis is forced when every evaluation agrees on it.

    Raises:
        RejectedInputError: If m exceeds the enumeration limit.
    """
    if spec.m > BRUTE_FORCE_MAX_M:
        raise RejectedInputError(
            f"brute-force enumeration supports m <= {BRUTE_FORCE_MAX_M}, got {spec.m}"
        )
    _check_knowledge(spec, knowledge, partition)

    edges = np.asarray(partition.boundary_points)
    ever_rejected = np.zeros(spec.m, dtype=bool)
    ever_accepted = np.zeros(spec.m, dtype=bool)

    assignments = itertools.product(*(range(e.lo, e.hi + 1) for e in knowledge))
    while True:
        chunk = list(itertools.islice(assignments, chunk_size))
        if not chunk:
            break
        cells = np.asarray(chunk, dtype=np.int64)
        left, right = edges[cells], edges[cells + 1]
        for fraction in _ORACLE_POINTS:
            rejected = evaluate_exact_batch(spec, left + fraction * (right - left))
            ever_rejected |= rejected.any(axis=0)
            ever_accepted |= (~rejected).any(axis=0)

    return DecisionState(
        forced_reject=frozenset(int(i) for i in np.flatnonzero(ever_rejected & ~ever_accepted)),
        forced_accept=frozenset(int(i) for i in np.flatnonzero(~ever_rejected)),
        undecided=frozenset(int(i) for i in np.flatnonzero(ever_rejected & ever_accepted)),
    )


def knowledge_leaving_undecided(
    pvalues,
    partition: ThresholdPartition,
    leave_undecided: int,
) -> KnowledgeVector:
    """Exact cells for every hypothesis except the ``leave_undecided`` closest to a boundary.

    Ties in boundary distance keep the lower index first.
    """
    pvalues = np.asarray(pvalues, dtype=float)
    m = pvalues.shape[0]
    if not 0 <= leave_undecided <= m:
        raise RejectedInputError(
            f"leave_undecided must lie in [0, m={m}], got {leave_undecided}"
        )
    if ((pvalues < 0.0) | (pvalues > 1.0)).any():
        raise RejectedInputError("p-values must lie in [0, 1]")

    cells = partition.cell_indices(pvalues)
    closest = np.argsort(boundary_distances(pvalues, partition), kind="stable")
    hidden = set(int(i) for i in closest[:leave_undecided])
    return KnowledgeVector(
        tuple(
            CellRange.undecided(partition.m) if i in hidden else CellRange.decided(int(c))
            for i, c in enumerate(cells)
        )
    )


def undecided_count_experiment(
    spec: ProcedureSpec,
    pvalues,
    leave_undecided: int,
    partition: ThresholdPartition | None = None,
) -> int:
    """Undecided count when the smallest-D hypotheses stay unresolved.

    Raises:
        RejectedInputError: If ``leave_undecided`` exceeds m.
    """
    if leave_undecided > spec.m:
        raise RejectedInputError(
            f"leave_undecided={leave_undecided} exceeds m={spec.m}"
        )
    if partition is None:
        partition = partition_for(spec)
    knowledge = knowledge_leaving_undecided(pvalues, partition, leave_undecided)
    state = partial_decisions(spec, knowledge, partition)
    logger.debug(
        "%d of %d hypotheses undecided with %d left unresolved",
        state.undecided_count,
        spec.m,
        leave_undecided,
    )
    return state.undecided_count
