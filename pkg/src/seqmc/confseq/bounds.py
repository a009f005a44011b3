"""Analytic length bounds and Hoeffding tails for binomial intervals."""

import math

import numpy as np

from ..errors import RejectedInputError


def lemma1_length_bound(n: int, rho: float) -> float:
    """Clopper-Pearson length bound 2 (2n)^(-1/2) (-log rho)^(1/2).

    ``rho`` is the level solved in each tail.
    """
    if n < 1:
        raise RejectedInputError(f"n must be >= 1, got {n}")
    if not 0.0 < rho < 1.0:
        raise RejectedInputError(f"rho must lie in (0, 1), got {rho}")
    return 2.0 * (2.0 * n) ** -0.5 * math.sqrt(-math.log(rho))


def lemma2_length_bound(n: int) -> float:
    """Robbins-sequence length bound n^(-1/2) {log(4 n log n)}^(1/2), n >= 3."""
    if n < 3:
        raise RejectedInputError(f"n must be >= 3 so that log n > 1, got {n}")
    return n**-0.5 * math.sqrt(math.log(4.0 * n * math.log(n)))


def hoeffding_tail(n: int, delta: float, two_sided: bool = False) -> float:
    """Hoeffding bound for the mean of n Bernoulli variables.

    With b_i - a_i = 1 the exponent reduces to -2 delta^2 n. The two-sided
    bound is not capped at 1.
    """
    if n < 1:
        raise RejectedInputError(f"n must be >= 1, got {n}")
    if delta < 0.0:
        raise RejectedInputError(f"delta must be non-negative, got {delta}")
    one_sided = math.exp(-2.0 * delta * delta * n)
    return 2.0 * one_sided if two_sided else one_sided


def length_exponent_ratio(bound, n_grid, gamma: float) -> np.ndarray:
    """bound(n) / n^gamma over ``n_grid``; tends to 0 when bound is o(n^gamma)."""
    n_grid = np.asarray(n_grid, dtype=float)
    values = np.array([bound(int(n)) for n in n_grid])
    return values / n_grid**gamma
