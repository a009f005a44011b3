"""Per-hypothesis sampling state and the records a run produces."""

from dataclasses import dataclass
from typing import Any

from ..confseq.models import IntervalEstimate
from ..errors import RejectedInputError
from ..procedures.models import CellRange, DecisionState


@dataclass
class HypothesisState:
    """
    Running Monte Carlo state of one hypothesis.

    ``raw_lower``/``raw_upper`` hold the running intersection of every
    per-step interval; ``current_interval`` is what was last reported and
    always contains p_hat.
    """

    true_p: float
    n: int = 0
    S: int = 0

    # Running intersection and spent risk
    raw_lower: float = 0.0
    raw_upper: float = 1.0
    risk_spent: float = 0.0

    current_interval: IntervalEstimate | None = None

    def record_draw(self, draw: int) -> None:
        """Append one Bernoulli outcome."""
        if draw not in (0, 1):
            raise RejectedInputError(f"draw must be 0 or 1, got {draw}")
        self.n += 1
        self.S += int(draw)

    def narrow(self, lower: float, upper: float, rho: float) -> None:
        """Intersect with a new per-step interval and spend ``rho``."""
        self.raw_lower = max(self.raw_lower, lower)
        self.raw_upper = min(self.raw_upper, upper)
        self.risk_spent += rho

    @property
    def p_hat(self) -> float:
        if self.n == 0:
            return 0.0
        return self.S / self.n

    def to_dict(self) -> dict[str, Any]:
        return {
            "true_p": self.true_p,
            "n": self.n,
            "S": self.S,
            "p_hat": self.p_hat,
            "risk_spent": self.risk_spent,
            "current_interval": (
                self.current_interval.to_dict() if self.current_interval else None
            ),
        }


@dataclass(frozen=True)
class StoppingRecord:
    """Stopping times of one hypothesis.

    ``truncated`` refers to the operational time and
    ``theoretical_truncated`` to the theoretical one; a truncated time equals
    the cap. ``on_boundary`` marks D = 0, where nothing is sampled.
    """

    true_p: float
    D: float
    cap: int
    tau_operational: int
    tau_theoretical: int
    truncated: bool
    theoretical_truncated: bool
    true_cell: int
    decided_cell: int | None = None
    on_boundary: bool = False
    final_cells: tuple[int, int] = (0, 0)
    final_interval: IntervalEstimate | None = None

    @property
    def correct(self) -> bool | None:
        """Whether the decided cell is the true one; None when undecided."""
        if self.decided_cell is None:
            return None
        return self.decided_cell == self.true_cell

    def stopping_time(self, kind: str = "operational") -> int:
        if kind == "theoretical":
            return self.tau_theoretical
        return self.tau_operational

    def knowledge(self) -> CellRange:
        """Cells this hypothesis is known to lie in once it stops."""
        if self.decided_cell is not None:
            return CellRange.decided(self.decided_cell)
        return CellRange(*self.final_cells)

    def to_dict(self) -> dict[str, Any]:
        return {
            "true_p": self.true_p,
            "D": self.D,
            "cap": self.cap,
            "tau_operational": self.tau_operational,
            "tau_theoretical": self.tau_theoretical,
            "truncated": self.truncated,
            "theoretical_truncated": self.theoretical_truncated,
            "true_cell": self.true_cell,
            "decided_cell": self.decided_cell,
            "on_boundary": self.on_boundary,
            "final_cells": list(self.final_cells),
            "final_interval": self.final_interval.to_dict() if self.final_interval else None,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "StoppingRecord":
        interval = data.get("final_interval")
        return cls(
            true_p=data["true_p"],
            D=data["D"],
            cap=data["cap"],
            tau_operational=data["tau_operational"],
            tau_theoretical=data["tau_theoretical"],
            truncated=data["truncated"],
            theoretical_truncated=data["theoretical_truncated"],
            true_cell=data["true_cell"],
            decided_cell=data.get("decided_cell"),
            on_boundary=data.get("on_boundary", False),
            final_cells=tuple(data.get("final_cells", (0, 0))),
            final_interval=IntervalEstimate(**interval) if interval else None,
        )


@dataclass(frozen=True)
class RepetitionRecord:
    """Everything one repetition of an experiment produced."""

    repetition: int
    pvalues: tuple[float, ...]
    records: tuple[StoppingRecord, ...]
    decisions: DecisionState
    first_decision_time: int
    full_decision_time: int
    fully_decided: bool = False

    def stopping_times(self, kind: str = "operational") -> list[int]:
        return [record.stopping_time(kind) for record in self.records]

    def to_dict(self) -> dict[str, Any]:
        return {
            "repetition": self.repetition,
            "pvalues": list(self.pvalues),
            "records": [record.to_dict() for record in self.records],
            "decisions": self.decisions.to_dict(),
            "first_decision_time": self.first_decision_time,
            "full_decision_time": self.full_decision_time,
            "fully_decided": self.fully_decided,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RepetitionRecord":
        return cls(
            repetition=data["repetition"],
            pvalues=tuple(data["pvalues"]),
            records=tuple(StoppingRecord.from_dict(r) for r in data["records"]),
            decisions=DecisionState.from_dict(data["decisions"]),
            first_decision_time=data["first_decision_time"],
            full_decision_time=data["full_decision_time"],
            fully_decided=data.get("fully_decided", False),
        )
