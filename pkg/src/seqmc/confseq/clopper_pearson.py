"""Exact Clopper-Pearson intervals, scalar and vectorised."""

import numpy as np
from scipy import optimize, stats

from ..errors import RejectedInputError
from .models import BinomialCount, IntervalEstimate, check_probability

ENDPOINT_TOLERANCE = 1e-10


def _upper_endpoint(n: int, S: int, tail_level: float) -> float:
    # P(X <= S | p) decreases from 1 at p=0 to 0 at p=1 when S < n
    if S == n:
        return 1.0
    return optimize.bisect(
        lambda p: stats.binom.cdf(S, n, p) - tail_level,
        0.0,
        1.0,
        xtol=ENDPOINT_TOLERANCE,
    )


def _lower_endpoint(n: int, S: int, tail_level: float) -> float:
    # P(X >= S | p) increases from 0 at p=0 to 1 at p=1 when S > 0
    if S == 0:
        return 0.0
    return optimize.bisect(
        lambda p: stats.binom.sf(S - 1, n, p) - tail_level,
        0.0,
        1.0,
        xtol=ENDPOINT_TOLERANCE,
    )


def cp_exact_interval(count: BinomialCount, tail_level: float) -> IntervalEstimate:
    """Two-sided Clopper-Pearson interval with ``tail_level`` in each tail.

    Endpoints solve the binomial tail equations by bisection to an absolute
    tolerance of 1e-10. The result always contains S/n.

    Args:
        count: Observed draws and exceedances.
        tail_level: Probability mass allowed in each tail, in (0, 1).

    Returns:
        IntervalEstimate whose ``risk_spent`` is ``2 * tail_level`` (capped at 1).
    """
    tail_level = check_probability(tail_level, "tail_level")
    p_hat = count.p_hat
    lower = min(_lower_endpoint(count.n, count.S, tail_level), p_hat)
    upper = max(_upper_endpoint(count.n, count.S, tail_level), p_hat)
    return IntervalEstimate(
        lower=max(0.0, lower),
        upper=min(1.0, upper),
        n=count.n,
        risk_spent=min(1.0, 2.0 * tail_level),
    )


def cp_interval_arrays(
    n: np.ndarray,
    s: np.ndarray,
    tail_level: np.ndarray | float,
) -> tuple[np.ndarray, np.ndarray]:
    """Clopper-Pearson endpoints for arrays of counts.

    Uses the beta-quantile form of the same tail equations:
    P(X >= S | p) = I_p(S, n-S+1) and P(X <= S | p) = 1 - I_p(S+1, n-S).

    Returns:
        Tuple ``(lower, upper)`` of float arrays broadcast over the inputs.
    """
    n = np.asarray(n, dtype=float)
    s = np.asarray(s, dtype=float)
    tail = np.asarray(tail_level, dtype=float)
    if np.any((tail <= 0.0) | (tail >= 1.0)):
        raise RejectedInputError("tail levels must lie in (0, 1)")
    if np.any((s < 0) | (s > n)) or np.any(n < 1):
        raise RejectedInputError("counts must satisfy 1 <= n and 0 <= S <= n")

    lower = np.where(
        s > 0,
        stats.beta.ppf(tail, np.maximum(s, 1.0), n - s + 1.0),
        0.0,
    )
    upper = np.where(
        s < n,
        stats.beta.isf(tail, s + 1.0, np.maximum(n - s, 1.0)),
        1.0,
    )
    p_hat = s / n
    return np.minimum(lower, p_hat), np.maximum(upper, p_hat)
