"""Data models for multiple-testing procedures and partial decisions."""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, Iterator

from ..confseq.models import check_probability
from ..errors import RejectedInputError


class ProcedureKind(Enum):
    """Supported multiple-testing procedures."""

    BONFERRONI = "bonferroni"
    BH = "bh"  # Benjamini-Hochberg step-up
    HOLM = "holm"  # Holm step-down


@dataclass(frozen=True)
class ProcedureSpec:
    """A procedure applied at overall level ``alpha`` to ``m`` hypotheses."""

    kind: ProcedureKind
    alpha: float
    m: int

    def __post_init__(self) -> None:
        check_probability(self.alpha, "alpha")
        if self.m < 1:
            raise RejectedInputError(f"hypothesis count m must be >= 1, got {self.m}")

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind.value, "alpha": self.alpha, "m": self.m}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ProcedureSpec":
        return cls(
            kind=ProcedureKind(data["kind"]),
            alpha=float(data["alpha"]),
            m=int(data["m"]),
        )


@dataclass(frozen=True)
class CellRange:
    """Contiguous range of partition cells a p-value is known to lie in.

    Decided(j) is ``CellRange(j, j)``; a fully unknown p-value spans every
    cell, ``CellRange(0, L)`` for L thresholds.
    """

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if not 0 <= self.lo <= self.hi:
            raise RejectedInputError(f"invalid cell range [{self.lo}, {self.hi}]")

    @classmethod
    def decided(cls, cell: int) -> "CellRange":
        return cls(cell, cell)

    @classmethod
    def undecided(cls, threshold_count: int) -> "CellRange":
        return cls(0, threshold_count)

    @property
    def is_decided(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1


@dataclass(frozen=True)
class KnowledgeVector:
    """What the confidence intervals have established, one entry per hypothesis."""

    entries: tuple[CellRange, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[CellRange]:
        return iter(self.entries)

    def __getitem__(self, index: int) -> CellRange:
        return self.entries[index]

    @classmethod
    def from_ranges(cls, ranges: Iterable[tuple[int, int] | CellRange]) -> "KnowledgeVector":
        entries = []
        for item in ranges:
            entries.append(item if isinstance(item, CellRange) else CellRange(*item))
        return cls(tuple(entries))

    @property
    def undecided_entries(self) -> list[int]:
        return [i for i, entry in enumerate(self.entries) if not entry.is_decided]


@dataclass(frozen=True)
class DecisionState:
    """Forced rejections, forced acceptances and undecided hypotheses (0-based)."""

    forced_reject: frozenset[int]
    forced_accept: frozenset[int]
    undecided: frozenset[int]

    def __post_init__(self) -> None:
        overlap = (
            (self.forced_reject & self.forced_accept)
            | (self.forced_reject & self.undecided)
            | (self.forced_accept & self.undecided)
        )
        if overlap:
            raise RejectedInputError(f"decision sets overlap on {sorted(overlap)}")

    @property
    def m(self) -> int:
        return len(self.forced_reject) + len(self.forced_accept) + len(self.undecided)

    @property
    def undecided_count(self) -> int:
        return len(self.undecided)

    @property
    def is_complete(self) -> bool:
        return not self.undecided

    def to_dict(self) -> dict[str, Any]:
        return {
            "forced_reject": sorted(self.forced_reject),
            "forced_accept": sorted(self.forced_accept),
            "undecided": sorted(self.undecided),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "DecisionState":
        return cls(
            forced_reject=frozenset(data.get("forced_reject", [])),
            forced_accept=frozenset(data.get("forced_accept", [])),
            undecided=frozenset(data.get("undecided", [])),
        )
