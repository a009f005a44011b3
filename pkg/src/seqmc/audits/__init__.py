"""Audits: CLI-runnable checks of bounds, coverage and forced decisions.

Each audit is a function of the experiment configuration wrapped by the
``audit`` decorator; the registry runs them and turns exceptions into
failed results.
"""

from .base import Audit, AuditMetadata, AuditResult, Violation, audit
from .bounds import BOUND_AUDITS
from .coverage import (
    COVERAGE_AUDITS,
    coverage_tolerance,
    engine_miss_flags,
    miscoverage_fraction,
    miss_flags,
)
from .decisions import PARTIAL_DECISION_AUDITS
from .registry import AuditRegistry


def create_default_registry() -> AuditRegistry:
    """Create a registry with all built-in audits.

    Returns:
        AuditRegistry with the bound, coverage and partial-decision audits.
    """
    registry = AuditRegistry()

    for item in BOUND_AUDITS:
        registry.register(item)
    for item in COVERAGE_AUDITS:
        registry.register(item)
    for item in PARTIAL_DECISION_AUDITS:
        registry.register(item)

    return registry


__all__ = [
    "Audit",
    "AuditMetadata",
    "AuditResult",
    "Violation",
    "audit",
    "AuditRegistry",
    "create_default_registry",
    "BOUND_AUDITS",
    "COVERAGE_AUDITS",
    "PARTIAL_DECISION_AUDITS",
    "miscoverage_fraction",
    "miss_flags",
    "engine_miss_flags",
    "coverage_tolerance",
]
