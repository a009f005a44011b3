"""Wald's lower bound on the expected number of draws to decide p against alpha."""

import math

from scipy import integrate, special

from ..confseq.models import check_probability
from ..errors import RejectedInputError


def wald_lower_bound(p1: float, alpha: float, epsilon: float) -> float:
    """Lower bound on the expected draws of any test deciding p1 vs alpha with error epsilon.

    The numerator eps*log(eps/(1-eps)) + (1-eps)*log((1-eps)/eps) vanishes at
    eps = 1/2, which then gives 0 even for p1 = alpha. Otherwise p1 = alpha
    makes the Kullback-Leibler denominator zero and the bound infinite.

    Raises:
        RejectedInputError: If any argument lies outside (0, 1).
    """
    check_probability(p1, "p1")
    check_probability(alpha, "alpha")
    check_probability(epsilon, "epsilon")

    numerator = epsilon * math.log(epsilon / (1.0 - epsilon)) + (1.0 - epsilon) * math.log(
        (1.0 - epsilon) / epsilon
    )
    if numerator == 0.0:
        return 0.0
    denominator = float(special.rel_entr(p1, alpha) + special.rel_entr(1.0 - p1, 1.0 - alpha))
    if denominator == 0.0:
        return math.inf
    return numerator / denominator


def integrated_wald_bound(
    alpha: float,
    epsilon: float,
    cap: float,
    lower: float = 0.0,
    upper: float = 1.0,
) -> float:
    """Mean of min(wald bound, cap) for p1 uniform on [lower, upper].

    Grows without limit in ``cap`` whenever alpha lies inside the range;
    used as the growth reference for truncated mean stopping times.
    """
    check_probability(alpha, "alpha")
    check_probability(epsilon, "epsilon")
    if not 0.0 <= lower < upper <= 1.0:
        raise RejectedInputError(f"need 0 <= lower < upper <= 1, got [{lower}, {upper}]")
    if cap < 0:
        raise RejectedInputError(f"cap must be >= 0, got {cap}")

    def clipped(p: float) -> float:
        if p <= 0.0 or p >= 1.0:
            return float(cap)
        return min(wald_lower_bound(p, alpha, epsilon), float(cap))

    points = [alpha] if lower < alpha < upper else None
    value, _ = integrate.quad(clipped, lower, upper, points=points, limit=200)
    return value / (upper - lower)
