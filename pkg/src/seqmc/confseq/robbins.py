"""Robbins binomial confidence sequence.

The interval at step n is the likelihood set
``{p : (n+1) C(n,S) p^S (1-p)^(n-S) > epsilon}``. Robbins showed that
``P(exists n: p not in I_n) <= epsilon``, so the sequence is anytime-valid
without intersecting or spending. The log-likelihood is unimodal in p with
its maximum at S/n, so the set is an interval around the point estimate.
"""

import logging
import math

import numpy as np
from scipy import optimize, stats
from scipy.optimize import elementwise

from ..errors import RejectedInputError
from .models import BinomialCount, IntervalEstimate, check_probability

logger = logging.getLogger(__name__)

ENDPOINT_TOLERANCE = 1e-10

# find_root needs finite function values at the bracket ends
_LEFT_BRACKET = float(np.finfo(float).tiny)
_RIGHT_BRACKET = float(np.nextafter(1.0, 0.0))


def robbins_log_statistic(n, s, p):
    """log((n+1) C(n,S) p^S (1-p)^(n-S)), broadcast over arrays."""
    n = np.asarray(n, dtype=float)
    return np.log1p(n) + stats.binom.logpmf(s, n, p)


def robbins_excludes(n, s, p, epsilon: float):
    """True where p lies outside the Robbins set at (n, S)."""
    return robbins_log_statistic(n, s, p) <= math.log(epsilon)


def robbins_interval(count: BinomialCount, epsilon: float) -> IntervalEstimate:
    """Robbins interval at a single (n, S).

    Endpoints are found by bisection outward from S/n. When even the maximum
    of the statistic does not exceed ``epsilon`` the set is empty and the
    interval degenerates to the point S/n, flagged.
    """
    epsilon = check_probability(epsilon, "epsilon")
    n, S = count.n, count.S
    p_hat = count.p_hat
    log_eps = math.log(epsilon)

    def excess(p: float) -> float:
        return float(robbins_log_statistic(n, S, p)) - log_eps

    if excess(p_hat) <= 0.0:
        logger.debug("empty Robbins set at n=%d S=%d eps=%g", n, S, epsilon)
        return IntervalEstimate(p_hat, p_hat, n, epsilon, degenerate=True)

    if S == 0 or excess(0.0) > 0.0:
        lower = 0.0
    else:
        lower = optimize.bisect(excess, 0.0, p_hat, xtol=ENDPOINT_TOLERANCE)
    if S == n or excess(1.0) > 0.0:
        upper = 1.0
    else:
        upper = optimize.bisect(excess, p_hat, 1.0, xtol=ENDPOINT_TOLERANCE)

    return IntervalEstimate(
        lower=min(lower, p_hat),
        upper=max(upper, p_hat),
        n=n,
        risk_spent=epsilon,
    )


def robbins_interval_arrays(
    n: np.ndarray,
    s: np.ndarray,
    epsilon: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised Robbins endpoints.

    Returns:
        Tuple ``(lower, upper, degenerate)``. Degenerate entries are points at S/n.
    """
    epsilon = check_probability(epsilon, "epsilon")
    n = np.asarray(n, dtype=float)
    s = np.asarray(s, dtype=float)
    if np.any(n < 1) or np.any((s < 0) | (s > n)):
        raise RejectedInputError("counts must satisfy 1 <= n and 0 <= S <= n")
    n, s = np.broadcast_arrays(n, s)
    p_hat = s / n
    log_eps = math.log(epsilon)

    def excess(p, n_, s_):
        return robbins_log_statistic(n_, s_, p) - log_eps

    degenerate = excess(p_hat, n, s) <= 0.0
    lower = np.zeros_like(p_hat)
    upper = np.ones_like(p_hat)

    need_lower = ~degenerate & (excess(np.zeros_like(p_hat), n, s) <= 0.0)
    if np.any(need_lower):
        res = elementwise.find_root(
            excess,
            (np.full(need_lower.sum(), _LEFT_BRACKET), p_hat[need_lower]),
            args=(n[need_lower], s[need_lower]),
            tolerances={"xatol": ENDPOINT_TOLERANCE, "xrtol": 0.0},
        )
        lower[need_lower] = res.x

    need_upper = ~degenerate & (excess(np.ones_like(p_hat), n, s) <= 0.0)
    if np.any(need_upper):
        res = elementwise.find_root(
            excess,
            (p_hat[need_upper], np.full(need_upper.sum(), _RIGHT_BRACKET)),
            args=(n[need_upper], s[need_upper]),
            tolerances={"xatol": ENDPOINT_TOLERANCE, "xrtol": 0.0},
        )
        upper[need_upper] = res.x

    lower = np.where(degenerate, p_hat, np.minimum(lower, p_hat))
    upper = np.where(degenerate, p_hat, np.maximum(upper, p_hat))
    return lower, upper, degenerate
