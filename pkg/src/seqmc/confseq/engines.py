"""Confidence-sequence engines and their registry.

An engine turns a block of cumulative counts (n_k, S_k) into the interval
reported after each draw. Blocks are processed in order; ``EngineCarry``
holds whatever an engine needs to continue from the previous block.
"""

from dataclasses import dataclass
from typing import Protocol

import numpy as np

from ..errors import RejectedInputError
from .clopper_pearson import cp_interval_arrays
from .models import SpendingSchedule
from .normal import normal_interval_arrays
from .robbins import robbins_interval_arrays
from .sequence import reconcile_arrays


@dataclass
class EngineCarry:
    """State carried between consecutive blocks of one stream."""

    raw_lower: float = 0.0
    raw_upper: float = 1.0
    risk_spent: float = 0.0


@dataclass
class BoundsBlock:
    """Reported intervals for one block of draws."""

    lower: np.ndarray
    upper: np.ndarray
    degenerate: np.ndarray
    risk_spent: np.ndarray

    @property
    def length(self) -> np.ndarray:
        return self.upper - self.lower


class SequenceEngine(Protocol):
    """Protocol for confidence-sequence engines."""

    name: str
    anytime_valid: bool

    def running_bounds(
        self,
        n: np.ndarray,
        s: np.ndarray,
        schedule: SpendingSchedule,
        carry: EngineCarry,
    ) -> BoundsBlock: ...


class ClopperPearsonSequence:
    """Running intersection of spending-level Clopper-Pearson intervals."""

    name = "cp"
    anytime_valid = True

    def running_bounds(self, n, s, schedule, carry):
        rho = schedule.levels(n)
        lower, upper = cp_interval_arrays(n, s, rho / 2.0)
        raw_lower = np.maximum(np.maximum.accumulate(lower), carry.raw_lower)
        raw_upper = np.minimum(np.minimum.accumulate(upper), carry.raw_upper)
        risk = carry.risk_spent + np.cumsum(rho)

        carry.raw_lower = float(raw_lower[-1])
        carry.raw_upper = float(raw_upper[-1])
        carry.risk_spent = float(risk[-1])

        lower, upper, flagged = reconcile_arrays(raw_lower, raw_upper, s / n)
        return BoundsBlock(lower, upper, flagged, np.minimum(risk, 1.0))


class RobbinsSequence:
    """Robbins likelihood sets, anytime-valid at level epsilon on their own."""

    name = "robbins"
    anytime_valid = True

    def running_bounds(self, n, s, schedule, carry):
        lower, upper, degenerate = robbins_interval_arrays(n, s, schedule.epsilon)
        carry.risk_spent = schedule.epsilon
        risk = np.full(lower.shape, schedule.epsilon)
        return BoundsBlock(lower, upper, degenerate, risk)


class NormalSequence:
    """Normal-approximation intervals at the spending levels; heuristic."""

    name = "normal"
    anytime_valid = False

    def running_bounds(self, n, s, schedule, carry):
        rho = schedule.levels(n)
        lower, upper = normal_interval_arrays(n, s, rho / 2.0)
        risk = carry.risk_spent + np.cumsum(rho)
        carry.risk_spent = float(risk[-1])
        return BoundsBlock(
            lower, upper, np.zeros(lower.shape, dtype=bool), np.minimum(risk, 1.0)
        )


class EngineRegistry:
    """Registry of confidence-sequence engines by name."""

    def __init__(self) -> None:
        self._engines: dict[str, SequenceEngine] = {}

    def register(self, engine: SequenceEngine) -> None:
        self._engines[engine.name] = engine

    def get(self, name: str) -> SequenceEngine:
        """Look up an engine.

        Raises:
            RejectedInputError: If no engine has that name.
        """
        engine = self._engines.get(name)
        if engine is None:
            known = ", ".join(sorted(self._engines))
            raise RejectedInputError(f"unknown engine '{name}' (known: {known})")
        return engine

    @property
    def names(self) -> list[str]:
        return list(self._engines)

    def __len__(self) -> int:
        return len(self._engines)

    def __contains__(self, name: str) -> bool:
        return name in self._engines


def create_default_registry() -> EngineRegistry:
    """Registry with the ``cp``, ``robbins`` and ``normal`` engines."""
    registry = EngineRegistry()
    for engine in (ClopperPearsonSequence(), RobbinsSequence(), NormalSequence()):
        registry.register(engine)
    return registry
