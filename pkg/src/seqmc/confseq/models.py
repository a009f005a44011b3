"""Data models for binomial confidence sequences."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable

import numpy as np

from ..errors import RejectedInputError


def check_probability(value: float, name: str, *, open_interval: bool = True) -> float:
    """Validate that ``value`` lies in (0,1) (or [0,1] when not open)."""
    value = float(value)
    if math.isnan(value):
        raise RejectedInputError(f"{name} must be a number, got NaN")
    if open_interval and not 0.0 < value < 1.0:
        raise RejectedInputError(f"{name} must lie in (0, 1), got {value}")
    if not open_interval and not 0.0 <= value <= 1.0:
        raise RejectedInputError(f"{name} must lie in [0, 1], got {value}")
    return value


@dataclass(frozen=True)
class BinomialCount:
    """Exceedances ``S`` observed among ``n`` Monte Carlo draws."""

    n: int
    S: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise RejectedInputError(f"draw count n must be >= 1, got {self.n}")
        if not 0 <= self.S <= self.n:
            raise RejectedInputError(
                f"exceedance count S must lie in [0, n={self.n}], got {self.S}"
            )

    @property
    def p_hat(self) -> float:
        """Maximum-likelihood estimate S/n."""
        return self.S / self.n

    @classmethod
    def from_draws(cls, draws: Iterable[int]) -> "BinomialCount":
        values = [int(d) for d in draws]
        return cls(n=len(values), S=sum(values))


@dataclass(frozen=True)
class IntervalEstimate:
    """A confidence interval for a p-value.

    ``degenerate`` marks intervals that had to be repaired: an empty running
    intersection or an empty Robbins set collapses to the point estimate.
    """

    lower: float
    upper: float
    n: int
    risk_spent: float
    degenerate: bool = False

    def __post_init__(self) -> None:
        if not 0.0 <= self.lower <= self.upper <= 1.0:
            raise RejectedInputError(
                f"interval must satisfy 0 <= lower <= upper <= 1, "
                f"got [{self.lower}, {self.upper}]"
            )
        if not 0.0 <= self.risk_spent <= 1.0:
            raise RejectedInputError(f"risk_spent must lie in [0, 1], got {self.risk_spent}")

    @property
    def length(self) -> float:
        return self.upper - self.lower

    def contains(self, x: float) -> bool:
        return self.lower <= x <= self.upper

    def intersect(self, other: "IntervalEstimate") -> tuple[float, float]:
        """Raw intersection bounds; may be empty (lower > upper)."""
        return max(self.lower, other.lower), min(self.upper, other.upper)

    def to_dict(self) -> dict[str, Any]:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "n": self.n,
            "risk_spent": self.risk_spent,
            "degenerate": self.degenerate,
        }


class SpendingRule(Enum):
    """How the total risk budget is spread over checking times."""

    QUADRATIC = "quadratic"
    TABLE = "table"


@dataclass(frozen=True)
class SpendingSchedule:
    """Risk-spending schedule rho_n with sum over n bounded by ``epsilon``.

    The quadratic rule spends rho_n = 6 eps / (pi^2 n^2). A table spends its
    entries first; once exhausted, the leftover budget decays quadratically on
    the shifted index.
    """

    epsilon: float
    rule: SpendingRule = SpendingRule.QUADRATIC
    table: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        check_probability(self.epsilon, "epsilon")
        if self.rule is SpendingRule.TABLE:
            if not self.table:
                raise RejectedInputError("a table schedule needs at least one level")
            if any(level <= 0.0 for level in self.table):
                raise RejectedInputError("table levels must be positive")
            if math.fsum(self.table) >= self.epsilon:
                raise RejectedInputError(
                    "table levels must leave part of epsilon for later steps"
                )

    @property
    def _tail_budget(self) -> float:
        if self.rule is SpendingRule.TABLE:
            return self.epsilon - math.fsum(self.table)
        return self.epsilon

    def level(self, n: int) -> float:
        """Risk level rho_n spent at draw ``n`` (1-based)."""
        if n < 1:
            raise RejectedInputError(f"n must be >= 1, got {n}")
        if self.rule is SpendingRule.TABLE:
            if n <= len(self.table):
                return float(self.table[n - 1])
            n -= len(self.table)
        return 6.0 * self._tail_budget / (math.pi**2 * n * n)

    def cumulative(self, n: int) -> float:
        """Total risk spent over draws 1..n."""
        if n < 1:
            return 0.0
        return math.fsum(self.levels(np.arange(1, n + 1)))

    def levels(self, n_values) -> np.ndarray:
        """Vectorised ``level`` over an integer array of draw counts."""
        n_values = np.asarray(n_values, dtype=np.int64)
        out = np.empty(n_values.shape, dtype=float)
        shifted = n_values.astype(float)
        if self.rule is SpendingRule.TABLE:
            table = np.asarray(self.table, dtype=float)
            in_table = n_values <= len(table)
            out[in_table] = table[n_values[in_table] - 1]
            shifted = shifted - len(table)
            tail = ~in_table
        else:
            tail = np.ones(n_values.shape, dtype=bool)
        out[tail] = 6.0 * self._tail_budget / (math.pi**2 * shifted[tail] ** 2)
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "epsilon": self.epsilon,
            "rule": self.rule.value,
            "table": list(self.table),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SpendingSchedule":
        return cls(
            epsilon=data["epsilon"],
            rule=SpendingRule(data.get("rule", "quadratic")),
            table=tuple(data.get("table", ())),
        )


def spending_level(n: int, schedule: SpendingSchedule) -> float:
    """Risk level rho_n of ``schedule`` at draw ``n``."""
    return schedule.level(n)
