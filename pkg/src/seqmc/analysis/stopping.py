"""Order statistics, survival curves, tail fits and truncated means."""

from typing import Sequence

import numpy as np
from scipy import stats

from ..errors import RejectedInputError
from ..montecarlo.state import RepetitionRecord
from .models import SurvivalCurve, TailFit

MIN_FIT_POINTS = 5


def order_statistic_cdf(r: int, n: int, F: float) -> float:
    """P(X_(r) <= x) for the r-th smallest of n i.i.d. draws with F = F(x).

    Equals P(Binomial(n, F) >= r).

    Raises:
        RejectedInputError: If r is outside [1, n] or F outside [0, 1].
    """
    if not 1 <= r <= n:
        raise RejectedInputError(f"rank r must lie in [1, n={n}], got {r}")
    if not 0.0 <= F <= 1.0:
        raise RejectedInputError(f"F must lie in [0, 1], got {F}")
    return float(stats.binom.sf(r - 1, n, F))


def _as_samples(samples) -> np.ndarray:
    values = np.asarray(samples, dtype=float).ravel()
    if values.size == 0:
        raise RejectedInputError("samples must not be empty")
    return values


def empirical_survival(samples, grid) -> SurvivalCurve:
    """Fraction of samples strictly greater than each grid point."""
    values = np.sort(_as_samples(samples))
    grid = np.asarray(grid, dtype=float)
    above = values.size - np.searchsorted(values, grid, side="right")
    return SurvivalCurve(grid=grid, values=above / values.size)


def tail_exponent_fit(curve: SurvivalCurve, fit_range: tuple[float, float]) -> TailFit:
    """Least-squares slope of log survival against log t inside ``fit_range``.

    Raises:
        RejectedInputError: If the range leaves the grid or holds fewer than
            five points with positive survival.
    """
    t_low, t_high = fit_range
    if not curve.grid[0] <= t_low < t_high <= curve.grid[-1]:
        raise RejectedInputError(
            f"fit range {fit_range} must lie within the grid "
            f"[{curve.grid[0]}, {curve.grid[-1]}]"
        )
    mask = (
        (curve.grid >= t_low)
        & (curve.grid <= t_high)
        & (curve.grid > 0.0)
        & (curve.values > 0.0)
    )
    if mask.sum() < MIN_FIT_POINTS:
        raise RejectedInputError(
            f"need at least {MIN_FIT_POINTS} positive points in {fit_range}, got {int(mask.sum())}"
        )
    log_t = np.log(curve.grid[mask])
    log_v = np.log(curve.values[mask])
    slope, intercept = np.polyfit(log_t, log_v, 1)
    residual = float(np.sqrt(np.mean((log_v - (slope * log_t + intercept)) ** 2)))
    return TailFit(
        gamma_hat=float(slope),
        fit_range=(float(t_low), float(t_high)),
        residual=residual,
        intercept=float(intercept),
        points=int(mask.sum()),
    )


def truncated_mean(samples, cap: float) -> float:
    """Mean of min(sample, cap)."""
    return float(np.mean(np.minimum(_as_samples(samples), cap)))


def truncated_mean_curve(samples, caps: Sequence[float]) -> np.ndarray:
    values = _as_samples(samples)
    return np.array([np.mean(np.minimum(values, cap)) for cap in caps])


def order_statistic_times(
    records: Sequence[RepetitionRecord],
    rank: int,
    kind: str = "operational",
) -> np.ndarray:
    """The ``rank``-th smallest stopping time (1-based) of each repetition."""
    if not records:
        return np.empty(0, dtype=np.int64)
    times = np.array([record.stopping_times(kind) for record in records])
    if not 1 <= rank <= times.shape[1]:
        raise RejectedInputError(f"rank must lie in [1, {times.shape[1]}], got {rank}")
    return np.sort(times, axis=1)[:, rank - 1]
