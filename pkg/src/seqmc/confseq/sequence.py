"""Anytime-valid Clopper-Pearson sequence built from per-step intervals.

Each step n spends rho_n from the schedule (rho_n / 2 per tail) and the
reported interval is the running intersection of every interval so far.
"""

import logging
from typing import TYPE_CHECKING

import numpy as np

from .clopper_pearson import cp_exact_interval
from .models import BinomialCount, IntervalEstimate, SpendingSchedule

if TYPE_CHECKING:
    from ..montecarlo.state import HypothesisState

logger = logging.getLogger(__name__)


def reconcile_arrays(
    raw_lower: np.ndarray,
    raw_upper: np.ndarray,
    p_hat: np.ndarray,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Turn raw running intersections into intervals that contain p_hat.

    An intersection that misses p_hat is widened to its hull with p_hat; an
    empty one collapses to the point p_hat. Both cases are flagged.
    """
    empty = raw_lower > raw_upper
    lower = np.where(empty, p_hat, np.minimum(raw_lower, p_hat))
    upper = np.where(empty, p_hat, np.maximum(raw_upper, p_hat))
    flagged = empty | (p_hat < raw_lower) | (p_hat > raw_upper)
    return lower, upper, flagged


def cp_sequence_update(
    state: "HypothesisState",
    draw: int,
    schedule: SpendingSchedule,
) -> IntervalEstimate:
    """Append one Bernoulli draw and return the running CP interval.

    Mutates ``state`` (counts, raw intersection, spent risk and current
    interval). The per-step interval uses tail level rho_n / 2 so the total
    risk over all steps stays below ``schedule.epsilon``.
    """
    state.record_draw(draw)
    rho = schedule.level(state.n)
    step = cp_exact_interval(BinomialCount(state.n, state.S), rho / 2.0)
    state.narrow(step.lower, step.upper, rho)

    lower, upper, flagged = reconcile_arrays(
        np.array(state.raw_lower), np.array(state.raw_upper), np.array(state.p_hat)
    )
    if flagged:
        logger.debug(
            "running CP intersection [%g, %g] misses p_hat=%g at n=%d",
            state.raw_lower,
            state.raw_upper,
            state.p_hat,
            state.n,
        )
    interval = IntervalEstimate(
        lower=float(lower),
        upper=float(upper),
        n=state.n,
        risk_spent=min(1.0, state.risk_spent),
        degenerate=bool(flagged),
    )
    state.current_interval = interval
    return interval
