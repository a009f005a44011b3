"""Audits of analytic bounds and exact formulas.

Includes interval length bounds, the length exponent, the containment
property of the partition, the Wald bound and the order-statistic CDF.
"""

import itertools
import math

import numpy as np

from ..analysis.stopping import order_statistic_cdf
from ..analysis.wald import wald_lower_bound
from ..confseq.bounds import length_exponent_ratio, lemma1_length_bound, lemma2_length_bound
from ..confseq.clopper_pearson import cp_interval_arrays
from ..confseq.models import SpendingSchedule
from ..confseq.robbins import robbins_interval_arrays
from ..montecarlo.streams import SeedDomain, StreamSeed
from ..partition import boundary_distances, classify_arrays
from ..procedures.evaluate import partition_for
from .base import AuditResult, Violation, audit

GROUP = "bound-audit"

LEMMA1_N_GRID = (10, 31, 100, 316, 1000, 3162, 10_000)
LEMMA1_RHO = (0.05, 0.01, 1e-4)
LEMMA2_N_GRID = (10, 31, 100, 316, 1000, 3162, 10_000, 31_623, 100_000)
LEMMA2_EPSILON = 0.01
LEMMA2_ASSERTED_FROM = 1000
LEMMA2_DRAWS_PER_CELL = 50
EXPONENT_GAMMA = -0.4
EXPONENT_GRID = np.unique(np.round(np.logspace(3, 6, 13)).astype(int))
LENGTH_SLACK = 1e-12


def _audit_rng(config, stream: int) -> np.random.Generator:
    return StreamSeed(config.master_seed, 0, stream).generator(SeedDomain.AUDIT)


@audit(
    name="lemma1-bound",
    description="Exact Clopper-Pearson length <= 2 (2n)^(-1/2) (-log rho)^(1/2) on the full grid",
    group=GROUP,
)
def lemma1_bound(config) -> AuditResult:
    violations = []
    checked = 0
    worst = 0.0
    for n, rho in itertools.product(LEMMA1_N_GRID, LEMMA1_RHO):
        s = np.arange(n + 1)
        lower, upper = cp_interval_arrays(np.full(n + 1, n), s, rho)
        bound = lemma1_length_bound(n, rho)
        lengths = upper - lower
        checked += lengths.size
        worst = max(worst, float(np.max(lengths / bound)))
        for S in np.flatnonzero(lengths > bound + LENGTH_SLACK):
            violations.append(
                Violation(
                    {"n": n, "S": int(S), "rho": rho, "length": float(lengths[S]), "bound": bound},
                    "Clopper-Pearson interval longer than its bound",
                )
            )
    return AuditResult.from_violations(
        "lemma1-bound",
        violations,
        f"{checked} intervals checked, {len(violations)} violations, max length/bound {worst:.4f}",
        {"checked": checked, "max_ratio": worst},
    )


@audit(
    name="lemma2-bound",
    description="Robbins interval length <= n^(-1/2) {log(4n log n)}^(1/2) for n >= 1000",
    group=GROUP,
)
def lemma2_bound(config) -> AuditResult:
    rng = _audit_rng(config, 1)
    violations = []
    compliant_by_n: dict[int, bool] = {}
    for n in LEMMA2_N_GRID:
        compliant = True
        bound = lemma2_length_bound(n)
        for p in config.lemma2_p:
            s = rng.binomial(n, p, LEMMA2_DRAWS_PER_CELL)
            lower, upper, _ = robbins_interval_arrays(np.full(s.shape, n), s, LEMMA2_EPSILON)
            lengths = upper - lower
            over = np.flatnonzero(lengths > bound + LENGTH_SLACK)
            compliant &= over.size == 0
            if n < LEMMA2_ASSERTED_FROM:
                continue
            for index in over:
                violations.append(
                    Violation(
                        {"n": n, "S": int(s[index]), "p": p, "length": float(lengths[index]), "bound": bound},
                        "Robbins interval longer than its bound",
                    )
                )
        compliant_by_n[n] = compliant

    # smallest grid n from which every larger grid point complies
    n0 = None
    for n in reversed(LEMMA2_N_GRID):
        if not compliant_by_n[n]:
            break
        n0 = n
    return AuditResult.from_violations(
        "lemma2-bound",
        violations,
        f"{len(violations)} violations for n >= {LEMMA2_ASSERTED_FROM}; smallest compliant n0 = {n0}",
        {"n0": n0, "p": list(config.lemma2_p)},
    )


@audit(
    name="length-exponent",
    description="Length bounds divided by n^-0.4 decrease towards 0 up to n = 10^6",
    group=GROUP,
)
def length_exponent(config) -> AuditResult:
    schedule = SpendingSchedule(config.epsilon)
    bounds = {
        "cp-spending": lambda n: lemma1_length_bound(n, schedule.level(n) / 2.0),
        "robbins": lemma2_length_bound,
    }
    violations = []
    ratios = {}
    for name, bound in bounds.items():
        ratio = length_exponent_ratio(bound, EXPONENT_GRID, EXPONENT_GAMMA)
        ratios[name] = ratio.tolist()
        for index in np.flatnonzero(np.diff(ratio) >= 0.0):
            violations.append(
                Violation(
                    {"bound": name, "n": int(EXPONENT_GRID[index + 1])},
                    "bound / n^gamma did not decrease",
                )
            )
    return AuditResult.from_violations(
        "length-exponent",
        violations,
        f"ratios at n=10^6: "
        + ", ".join(f"{k}={v[-1]:.4f}" for k, v in ratios.items()),
        {"gamma": EXPONENT_GAMMA, "grid": EXPONENT_GRID.tolist(), "ratios": ratios},
    )


@audit(
    name="containment",
    description="Intervals around p_hat within D/2 of p, shorter than D/2, classify into p's cell",
    group=GROUP,
)
def containment(config) -> AuditResult:
    rng = _audit_rng(config, 2)
    partition = partition_for(config.procedure_spec())
    count = config.containment_instances
    p = rng.random(count)
    D = boundary_distances(p, partition)
    keep = D > 0.0
    p, D = p[keep], D[keep]

    # strictly inside the open conditions |p_hat - p| < D/2 and width < D/2
    shrink = 1.0 - 1e-9
    p_hat = p + rng.uniform(-1.0, 1.0, p.size) * D / 2.0 * shrink
    width = rng.random(p.size) * D / 2.0 * shrink
    lower = p_hat - rng.random(p.size) * width
    upper = lower + width

    expected = partition.cell_indices(p)
    got = classify_arrays(lower, upper, partition)
    violations = [
        Violation(
            {"p": float(p[i]), "p_hat": float(p_hat[i]), "lower": float(lower[i]), "upper": float(upper[i])},
            f"classified {int(got[i])}, expected cell {int(expected[i])}",
        )
        for i in np.flatnonzero(got != expected)
    ]
    return AuditResult.from_violations(
        "containment",
        violations,
        f"{p.size} instances on {partition.m} thresholds, {len(violations)} violations",
        {"instances": int(p.size)},
    )


def _wald_reference(p1: float, alpha: float, epsilon: float) -> float:
    numerator = (1.0 - 2.0 * epsilon) * math.log((1.0 - epsilon) / epsilon)
    denominator = p1 * math.log(p1 / alpha) + (1.0 - p1) * math.log((1.0 - p1) / (1.0 - alpha))
    return numerator / denominator


@audit(
    name="wald",
    description="Wald bound against an independent evaluation, 0 at eps=1/2, infinite at p1=alpha",
    group=GROUP,
)
def wald(config) -> AuditResult:
    rng = _audit_rng(config, 3)
    violations = []
    for p1, alpha, epsilon in rng.uniform(0.01, 0.49, (20, 3)):
        got = wald_lower_bound(p1, alpha, epsilon)
        expected = _wald_reference(p1, alpha, epsilon)
        if abs(got - expected) > 1e-12 * abs(expected):
            violations.append(
                Violation({"p1": p1, "alpha": alpha, "epsilon": epsilon, "got": got}, f"expected {expected}")
            )
    if wald_lower_bound(0.2, 0.1, 0.5) != 0.0:
        violations.append(Violation({"epsilon": 0.5}, "bound must vanish at epsilon = 1/2"))
    if not math.isinf(wald_lower_bound(0.1, 0.1, 0.1)):
        violations.append(Violation({"p1": 0.1, "alpha": 0.1}, "bound must be infinite at p1 = alpha"))
    return AuditResult.from_violations(
        "wald", violations, f"22 evaluations, {len(violations)} violations"
    )


@audit(
    name="order-statistics",
    description="Order-statistic CDF against enumeration of all outcomes for n <= 6",
    group=GROUP,
)
def order_statistics(config) -> AuditResult:
    violations = []
    checked = 0
    for n in range(1, 7):
        outcomes = np.array(list(itertools.product((0, 1), repeat=n)))
        below = outcomes.sum(axis=1)
        for F in (0.1, 0.5, 0.9):
            weights = F**below * (1.0 - F) ** (n - below)
            for r in range(1, n + 1):
                expected = float(weights[below >= r].sum())
                got = order_statistic_cdf(r, n, F)
                checked += 1
                if abs(got - expected) > 1e-12:
                    violations.append(
                        Violation({"r": r, "n": n, "F": F, "got": got}, f"expected {expected}")
                    )
    return AuditResult.from_violations(
        "order-statistics", violations, f"{checked} cases, {len(violations)} violations"
    )


BOUND_AUDITS = [lemma1_bound, lemma2_bound, length_exponent, containment, wald, order_statistics]
