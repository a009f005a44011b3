"""Threshold partition of [0, 1] and classification of intervals into its cells.

For thresholds a_1 < ... < a_m the cells are [0, a_1), [a_1, a_2), ...,
[a_{m-1}, a_m) and the closed last cell [a_m, 1]. Cell j is the one whose
left end is a_j (with a_0 = 0).
"""

from dataclasses import dataclass
from enum import Enum, auto
from typing import Any, Sequence

import numpy as np

from .confseq.models import IntervalEstimate
from .errors import RejectedInputError


class ClassificationStatus(Enum):
    DECIDED = auto()
    UNDECIDED = auto()


@dataclass(frozen=True)
class Classification:
    """Whether an interval lies inside a single cell, and which one."""

    status: ClassificationStatus
    cell: int | None = None

    @classmethod
    def decided(cls, cell: int) -> "Classification":
        return cls(ClassificationStatus.DECIDED, cell)

    @classmethod
    def undecided(cls) -> "Classification":
        return cls(ClassificationStatus.UNDECIDED, None)

    @property
    def is_decided(self) -> bool:
        return self.status is ClassificationStatus.DECIDED

    def __str__(self) -> str:
        return f"Decided({self.cell})" if self.is_decided else "Undecided"


@dataclass(frozen=True)
class Cell:
    lower: float
    upper: float
    closed_right: bool

    def contains(self, p: float) -> bool:
        if self.closed_right:
            return self.lower <= p <= self.upper
        return self.lower <= p < self.upper


@dataclass(frozen=True)
class ThresholdPartition:
    """Sorted thresholds and the m+1 cells they cut [0, 1] into."""

    thresholds: tuple[float, ...]

    @property
    def m(self) -> int:
        return len(self.thresholds)

    @property
    def cell_count(self) -> int:
        return len(self.thresholds) + 1

    @property
    def cells(self) -> list[Cell]:
        edges = (0.0, *self.thresholds, 1.0)
        last = len(edges) - 2
        return [
            Cell(edges[j], edges[j + 1], closed_right=(j == last))
            for j in range(len(edges) - 1)
        ]

    @property
    def boundary_points(self) -> tuple[float, ...]:
        return (0.0, *self.thresholds, 1.0)

    def cell_of(self, p: float) -> int:
        """Index of the unique cell containing ``p``."""
        if not 0.0 <= p <= 1.0:
            raise RejectedInputError(f"p must lie in [0, 1], got {p}")
        return int(np.searchsorted(self.thresholds, p, side="right"))

    def cell_indices(self, values) -> np.ndarray:
        """Vectorised ``cell_of`` without range checks."""
        return np.searchsorted(np.asarray(self.thresholds), values, side="right")

    def cell_range(self, lower: float, upper: float) -> tuple[int, int]:
        """First and last cell met by the closed interval [lower, upper]."""
        return self.cell_of(lower), self.cell_of(upper)

    def to_dict(self) -> dict[str, Any]:
        return {"thresholds": list(self.thresholds)}


def build_partition(thresholds: Sequence[float]) -> ThresholdPartition:
    """Build the partition for strictly ascending thresholds in (0, 1).

    Raises:
        RejectedInputError: On an empty list, values outside (0, 1), or
            duplicate/unsorted thresholds. Deduplication is the caller's job.
    """
    values = tuple(float(t) for t in thresholds)
    if not values:
        raise RejectedInputError("a partition needs at least one threshold")
    if any(not 0.0 < t < 1.0 for t in values):
        raise RejectedInputError(f"thresholds must lie in (0, 1), got {values}")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise RejectedInputError(f"thresholds must be strictly ascending, got {values}")
    return ThresholdPartition(values)


def min_boundary_distance(p: float, partition: ThresholdPartition) -> float:
    """Distance D from ``p`` to the nearest cell boundary (0, 1 or a threshold)."""
    if not 0.0 <= p <= 1.0:
        raise RejectedInputError(f"p must lie in [0, 1], got {p}")
    return float(np.min(np.abs(np.asarray(partition.boundary_points) - p)))


def boundary_distances(values, partition: ThresholdPartition) -> np.ndarray:
    """Vectorised ``min_boundary_distance``."""
    values = np.asarray(values, dtype=float)
    points = np.asarray(partition.boundary_points)
    return np.min(np.abs(values[..., None] - points), axis=-1)


def classify(interval: IntervalEstimate, partition: ThresholdPartition) -> Classification:
    """Decided(j) iff [lower, upper] sits inside cell j.

    Half-open cells need ``upper`` strictly below their right end; the last
    cell is closed at 1.
    """
    low_cell = partition.cell_of(interval.lower)
    high_cell = partition.cell_of(interval.upper)
    if low_cell == high_cell:
        return Classification.decided(low_cell)
    return Classification.undecided()


def classify_arrays(lower, upper, partition: ThresholdPartition) -> np.ndarray:
    """Cell index where decided, -1 where undecided."""
    low_cell = partition.cell_indices(lower)
    high_cell = partition.cell_indices(upper)
    return np.where(low_cell == high_cell, low_cell, -1)
