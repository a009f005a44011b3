"""Experiment runners behind the CLI subcommands."""

import logging
from dataclasses import dataclass

import numpy as np

from ..analysis.models import SurvivalCurve, TailFit
from ..analysis.stopping import (
    empirical_survival,
    order_statistic_times,
    tail_exponent_fit,
    truncated_mean,
)
from ..analysis.wald import integrated_wald_bound
from ..audits import AuditResult, create_default_registry
from ..config.models import ExperimentConfig
from ..errors import RejectedInputError
from ..montecarlo.experiment import run_experiment
from ..montecarlo.priors import PriorKind, PriorSpec, sample_prior
from ..montecarlo.streams import StreamSeed
from ..procedures.decisions import undecided_count_experiment
from ..procedures.evaluate import partition_for
from ..procedures.models import ProcedureKind
from .output import render_csv

logger = logging.getLogger(__name__)

FIG1_HEADER = ("m", "t", "survival")
DIVERGENCE_HEADER = ("scenario", "cap", "statistic", "value", "truncated_fraction")
TAIL_GRID_POINTS = 21
TAIL_FIT_START = 100


@dataclass
class Fig1Result:
    curves: dict[int, SurvivalCurve]
    medians: dict[int, float]
    counts: dict[int, np.ndarray]
    csv: str


def undecided_counts(config: ExperimentConfig, m: int) -> np.ndarray:
    """Undecided count of each repetition for ``m`` hypotheses."""
    spec = config.procedure_spec(m)
    partition = partition_for(spec)
    counts = np.empty(config.repetitions, dtype=np.int64)
    for repetition in range(config.repetitions):
        pvalues = sample_prior(
            config.prior, m, StreamSeed(config.master_seed, repetition), partition.thresholds
        )
        counts[repetition] = undecided_count_experiment(
            spec, pvalues, config.leave_undecided, partition
        )
    return counts


def run_fig1(config: ExperimentConfig) -> Fig1Result:
    """Survival curve of the undecided count for every configured m."""
    curves, medians, counts = {}, {}, {}
    rows = []
    for m in config.m_values:
        logger.info("fig1: m=%d, %d repetitions", m, config.repetitions)
        counts[m] = undecided_counts(config, m)
        grid = np.arange(m + 1)
        curves[m] = empirical_survival(counts[m], grid)
        medians[m] = float(np.median(counts[m]))
        rows.extend((m, int(t), float(v)) for t, v in curves[m].to_rows())

    comments = [f"median_undecided m={m} value={medians[m]:g}" for m in config.m_values]
    return Fig1Result(curves, medians, counts, render_csv(config, FIG1_HEADER, rows, comments))


def divergence_scenarios(config: ExperimentConfig) -> dict[str, tuple[PriorSpec, int, ProcedureKind]]:
    """Prior, hypothesis count and procedure of each divergence scenario."""
    alpha = config.alpha
    scenarios = {
        "single": (
            PriorSpec(kind=PriorKind.UNIFORM, lower=alpha / 2.0, upper=min(1.0, 1.5 * alpha)),
            1,
            config.procedure,
        ),
        "uniform": (PriorSpec(kind=PriorKind.UNIFORM), config.m, config.procedure),
        "region-a": (PriorSpec(kind=PriorKind.REGION_A), config.m, ProcedureKind.BH),
    }
    if config.m < 2:
        # region A needs two thresholds
        del scenarios["region-a"]
    return scenarios


def _statistics(records, m: int, kind: str) -> dict[str, np.ndarray]:
    stats = {"tau_1": order_statistic_times(records, 1, kind)}
    if m >= 3:
        stats[f"tau_{m - 2}"] = order_statistic_times(records, m - 2, kind)
    if m >= 2:
        stats[f"tau_{m}"] = order_statistic_times(records, m, kind)
        stats["first_decision"] = np.array([r.first_decision_time for r in records])
        stats["full_decision"] = np.array([r.full_decision_time for r in records])
    return stats


def stopping_time_tail(samples, cap: int) -> TailFit | None:
    """Power-law fit of P(tau > t) on a log grid from 100 to cap / 10.

    Returns None when too few samples survive into the grid to fit a slope.
    """
    t_high = cap // 10
    if t_high <= TAIL_FIT_START:
        return None
    grid = np.geomspace(TAIL_FIT_START, t_high, TAIL_GRID_POINTS)
    curve = empirical_survival(samples, grid)
    try:
        return tail_exponent_fit(curve, (float(grid[0]), float(grid[-1])))
    except RejectedInputError as e:
        logger.debug("no tail fit below cap=%d: %s", cap, e)
        return None


def run_divergence(config: ExperimentConfig, scenarios: list[str] | None = None) -> tuple[list[tuple], str]:
    """Truncated means of stopping-time order statistics across caps.

    Each scenario is simulated once at the largest cap; min(tau, N) for a
    smaller N is exact from those runs.
    """
    available = divergence_scenarios(config)
    chosen = scenarios or list(available)
    unknown = [name for name in chosen if name not in available]
    if unknown:
        raise RejectedInputError(f"unknown divergence scenarios {unknown}")

    max_cap = max(config.caps)
    rows: list[tuple] = []
    comments: list[str] = []
    for name in chosen:
        prior, m, procedure = available[name]
        spec = config.with_overrides(procedure=procedure).procedure_spec(m)
        logger.info("divergence: scenario=%s m=%d cap=%d", name, m, max_cap)
        records = run_experiment(
            prior,
            spec,
            config.engine,
            config.epsilon,
            max_cap,
            config.repetitions,
            config.master_seed,
            workers=config.workers,
            stopping_time=config.stopping_time,
        )
        if not records:
            continue
        statistics = _statistics(records, m, config.stopping_time)
        fit = stopping_time_tail(statistics[f"tau_{m}"], max_cap)
        if fit is not None:
            comments.append(
                f"tail_exponent scenario={name} statistic=tau_{m} "
                f"gamma_hat={fit.gamma_hat:.4f} points={fit.points}"
            )
        for statistic, samples in statistics.items():
            for cap in config.caps:
                rows.append(
                    (name, cap, statistic, truncated_mean(samples, cap), float(np.mean(samples >= cap)))
                )
        if name == "single":
            for cap in config.caps:
                rows.append(
                    (
                        name,
                        cap,
                        "wald_integrated",
                        integrated_wald_bound(
                            config.alpha, config.epsilon, cap, prior.lower, prior.upper
                        ),
                        None,
                    )
                )
    return rows, render_csv(config, DIVERGENCE_HEADER, rows, comments)


def select_audits(config: ExperimentConfig, only: list[str] | None = None) -> list[str]:
    """Audit names to run: ``only`` if given, else the configured group, else all."""
    registry = create_default_registry()
    if only:
        unknown = [name for name in only if name not in registry]
        if unknown:
            raise RejectedInputError(
                f"unknown audits {unknown} (known: {', '.join(registry.names)})"
            )
        return list(only)
    if config.kind.is_audit:
        return [item.name for item in registry.get_by_group(config.kind.value)]
    return registry.names


def run_audits(config: ExperimentConfig, only: list[str] | None = None) -> list[AuditResult]:
    registry = create_default_registry()
    return registry.run(select_audits(config, only), config)
