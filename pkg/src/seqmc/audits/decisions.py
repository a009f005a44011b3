"""Audits of forced-decision computation."""

import itertools

import numpy as np

from ..montecarlo.priors import PriorKind, PriorSpec, sample_prior
from ..montecarlo.streams import SeedDomain, StreamSeed
from ..procedures.decisions import (
    brute_force_decisions,
    knowledge_leaving_undecided,
    partial_decisions,
)
from ..procedures.evaluate import partition_for
from ..procedures.models import CellRange, KnowledgeVector, ProcedureKind, ProcedureSpec
from .base import AuditResult, Violation, audit

GROUP = "partial-decision-audit"
EXHAUSTIVE_M = (2, 3)
RANDOM_M = (4, 5)
REGION_A_M = (3, 5)


def _all_ranges(cells: int) -> list[CellRange]:
    return [CellRange(lo, hi) for lo in range(cells + 1) for hi in range(lo, cells + 1)]


def _random_knowledge(rng: np.random.Generator, m: int, cells: int) -> KnowledgeVector:
    entries = []
    for _ in range(m):
        lo = int(rng.integers(0, cells + 1))
        hi = lo if rng.random() < 0.5 else int(rng.integers(lo, cells + 1))
        entries.append(CellRange(lo, hi))
    return KnowledgeVector(tuple(entries))


def _compare(spec: ProcedureSpec, knowledge: KnowledgeVector, partition) -> Violation | None:
    fast = partial_decisions(spec, knowledge, partition)
    oracle = brute_force_decisions(spec, knowledge, partition)
    if fast == oracle:
        return None
    return Violation(
        {
            "procedure": spec.kind.value,
            "m": spec.m,
            "knowledge": [(e.lo, e.hi) for e in knowledge],
        },
        f"corner decisions {fast.to_dict()} differ from enumeration {oracle.to_dict()}",
    )


@audit(
    name="partial-decisions",
    description="Corner-completion decisions agree with exhaustive enumeration",
    group=GROUP,
)
def partial_decision_oracle(config) -> AuditResult:
    rng = StreamSeed(config.master_seed, 0, 4).generator(SeedDomain.AUDIT)
    violations = []
    checked = 0
    for kind in ProcedureKind:
        for m in EXHAUSTIVE_M:
            spec = ProcedureSpec(kind, config.alpha, m)
            partition = partition_for(spec)
            for entries in itertools.product(_all_ranges(partition.m), repeat=m):
                checked += 1
                found = _compare(spec, KnowledgeVector(entries), partition)
                if found:
                    violations.append(found)

    cells = [(kind, m) for kind in ProcedureKind for m in RANDOM_M]
    base, extra = divmod(config.random_instances, len(cells))
    random_checked = 0
    for index, (kind, m) in enumerate(cells):
        spec = ProcedureSpec(kind, config.alpha, m)
        partition = partition_for(spec)
        for _ in range(base + (index < extra)):
            random_checked += 1
            found = _compare(spec, _random_knowledge(rng, m, partition.m), partition)
            if found:
                violations.append(found)
    checked += random_checked

    return AuditResult.from_violations(
        "partial-decisions",
        violations,
        f"{checked} knowledge vectors, {len(violations)} disagreements",
        {"checked": checked, "random": random_checked},
    )


@audit(
    name="region-a-blocking",
    description="With only the largest region-A p-value unresolved, BH decides nothing",
    group=GROUP,
)
def region_a_blocking(config) -> AuditResult:
    violations = []
    for m in REGION_A_M:
        spec = ProcedureSpec(ProcedureKind.BH, config.alpha, m)
        partition = partition_for(spec)
        prior = PriorSpec(kind=PriorKind.REGION_A)
        for draw in range(config.region_a_draws):
            pvalues = sample_prior(prior, m, StreamSeed(config.master_seed, draw), partition.thresholds)
            if int(np.argmax(pvalues)) != m - 1:
                violations.append(
                    Violation({"m": m, "draw": draw}, "last coordinate is not the largest")
                )
                continue
            knowledge = knowledge_leaving_undecided(pvalues, partition, 1)
            state = partial_decisions(spec, knowledge, partition)
            if state.undecided_count != m or knowledge[m - 1].is_decided:
                violations.append(
                    Violation(
                        {"m": m, "draw": draw, "pvalues": pvalues.tolist()},
                        f"{state.undecided_count} of {m} undecided",
                    )
                )
    return AuditResult.from_violations(
        "region-a-blocking",
        violations,
        f"{len(REGION_A_M) * config.region_a_draws} draws, {len(violations)} not fully blocked",
    )


PARTIAL_DECISION_AUDITS = [partial_decision_oracle, region_a_blocking]
