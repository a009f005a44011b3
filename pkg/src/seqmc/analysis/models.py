"""Result types of stopping-time analysis."""

from dataclasses import dataclass
from typing import Any

import numpy as np

from ..errors import RejectedInputError


@dataclass(frozen=True, eq=False)
class SurvivalCurve:
    """Empirical P(X > t) evaluated on an ascending grid."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.shape != values.shape or grid.ndim != 1:
            raise RejectedInputError("grid and values must be 1-d arrays of equal length")
        if np.any(np.diff(grid) <= 0):
            raise RejectedInputError("survival grid must be strictly ascending")
        if np.any((values < 0.0) | (values > 1.0)):
            raise RejectedInputError("survival values must lie in [0, 1]")
        if np.any(np.diff(values) > 0):
            raise RejectedInputError("survival values must be non-increasing")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.grid.shape[0]

    def at(self, t: float) -> float:
        """Value at grid point ``t``."""
        index = np.flatnonzero(self.grid == t)
        if not index.size:
            raise RejectedInputError(f"{t} is not a grid point")
        return float(self.values[index[0]])

    def to_rows(self) -> list[tuple[float, float]]:
        return list(zip(self.grid.tolist(), self.values.tolist()))

    def to_dict(self) -> dict[str, Any]:
        return {"grid": self.grid.tolist(), "values": self.values.tolist()}


@dataclass(frozen=True)
class TailFit:
    """Power-law fit P(X > t) ~ C t^gamma_hat over ``fit_range``."""

    gamma_hat: float
    fit_range: tuple[float, float]
    residual: float
    intercept: float = 0.0
    points: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "gamma_hat": self.gamma_hat,
            "fit_range": list(self.fit_range),
            "residual": self.residual,
            "intercept": self.intercept,
            "points": self.points,
        }
