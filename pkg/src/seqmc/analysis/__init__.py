"""Stopping-time analysis.

Provides:
- wald_lower_bound / integrated_wald_bound: expected-runtime lower bounds
- order_statistic_cdf, order_statistic_times: order statistics
- empirical_survival, tail_exponent_fit: survival curves and power-law tails
- truncated_mean, truncated_mean_curve: E(min(tau, N)) and its growth in N
"""

from .models import SurvivalCurve, TailFit
from .stopping import (
    empirical_survival,
    order_statistic_cdf,
    order_statistic_times,
    tail_exponent_fit,
    truncated_mean,
    truncated_mean_curve,
)
from .wald import integrated_wald_bound, wald_lower_bound


__all__ = [
    # Models
    "SurvivalCurve",
    "TailFit",
    # Bounds
    "wald_lower_bound",
    "integrated_wald_bound",
    # Statistics
    "order_statistic_cdf",
    "order_statistic_times",
    "empirical_survival",
    "tail_exponent_fit",
    "truncated_mean",
    "truncated_mean_curve",
]
