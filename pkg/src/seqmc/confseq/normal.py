"""Normal-approximation (Wald) intervals.

Heuristic only: these intervals carry no anytime guarantee. They are kept
because their n^(-1/2) length makes them a reference case for the
length condition on confidence sequences.
"""

import numpy as np
from scipy import stats

from ..errors import RejectedInputError
from .models import BinomialCount, IntervalEstimate, check_probability


def _variance_proportion(n, s):
    # all-or-nothing counts have zero plug-in variance; shrink towards 1/2
    n = np.asarray(n, dtype=float)
    s = np.asarray(s, dtype=float)
    degenerate = (s == 0) | (s == n)
    return np.where(degenerate, (s + 0.5) / (n + 1.0), s / n)


def normal_interval_arrays(n, s, tail_level) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised normal intervals, clipped to [0, 1]."""
    n = np.asarray(n, dtype=float)
    s = np.asarray(s, dtype=float)
    tail = np.asarray(tail_level, dtype=float)
    if np.any((tail <= 0.0) | (tail >= 1.0)):
        raise RejectedInputError("tail levels must lie in (0, 1)")
    p_hat = s / n
    q = _variance_proportion(n, s)
    half_width = stats.norm.isf(tail) * np.sqrt(q * (1.0 - q) / n)
    return np.clip(p_hat - half_width, 0.0, 1.0), np.clip(p_hat + half_width, 0.0, 1.0)


def normal_interval(count: BinomialCount, tail_level: float) -> IntervalEstimate:
    """p_hat +/- z * sqrt(p_hat (1 - p_hat) / n), z the upper ``tail_level`` quantile."""
    tail_level = check_probability(tail_level, "tail_level")
    lower, upper = normal_interval_arrays(count.n, count.S, tail_level)
    return IntervalEstimate(
        lower=float(lower),
        upper=float(upper),
        n=count.n,
        risk_spent=min(1.0, 2.0 * tail_level),
    )
