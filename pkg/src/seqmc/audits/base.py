"""Base classes for the audit system."""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Callable, Protocol

if TYPE_CHECKING:
    from ..config.models import ExperimentConfig

# Violations listed in full in a result; the count is always exact.
MAX_REPORTED_VIOLATIONS = 25


@dataclass
class Violation:
    """One offending input of an audit."""

    inputs: dict[str, Any]
    message: str

    def __str__(self) -> str:
        shown = ", ".join(f"{k}={v}" for k, v in self.inputs.items())
        return f"{self.message} ({shown})"

    def to_dict(self) -> dict[str, Any]:
        return {"inputs": self.inputs, "message": self.message}


@dataclass
class AuditResult:
    """Verdict of one audit run."""

    name: str
    passed: bool
    summary: str
    violations: list[Violation] = field(default_factory=list)
    violation_count: int = 0
    details: dict[str, Any] = field(default_factory=dict)
    error_message: str | None = None

    @classmethod
    def from_success(
        cls,
        name: str,
        summary: str,
        details: dict[str, Any] | None = None,
    ) -> "AuditResult":
        return cls(name=name, passed=True, summary=summary, details=details or {})

    @classmethod
    def from_violations(
        cls,
        name: str,
        violations: list[Violation],
        summary: str,
        details: dict[str, Any] | None = None,
    ) -> "AuditResult":
        """Passed exactly when ``violations`` is empty."""
        return cls(
            name=name,
            passed=not violations,
            summary=summary,
            violations=violations[:MAX_REPORTED_VIOLATIONS],
            violation_count=len(violations),
            details=details or {},
        )

    @classmethod
    def from_error(cls, error_message: str, name: str) -> "AuditResult":
        """A failed result for an audit that raised instead of finishing."""
        return cls(
            name=name,
            passed=False,
            summary=f"audit raised: {error_message}",
            error_message=error_message,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "summary": self.summary,
            "violation_count": self.violation_count,
            "violations": [v.to_dict() for v in self.violations],
            "details": self.details,
            "error": self.error_message,
        }


@dataclass
class AuditMetadata:
    """Metadata describing an audit."""

    name: str
    description: str
    group: str


class AuditExecutor(Protocol):
    """Audits take the resolved configuration and return a verdict."""

    def __call__(self, config: "ExperimentConfig") -> AuditResult: ...


@dataclass
class Audit:
    """An audit with its metadata and executor."""

    metadata: AuditMetadata
    execute: AuditExecutor

    @property
    def name(self) -> str:
        return self.metadata.name

    @property
    def group(self) -> str:
        return self.metadata.group


def audit(name: str, description: str, group: str) -> Callable[[AuditExecutor], Audit]:
    """Decorator to create an audit from a function.

    Usage:
        @audit(
            name="lemma1-bound",
            description="Clopper-Pearson length against the analytic bound",
            group="bound-audit",
        )
        def lemma1_bound(config: ExperimentConfig) -> AuditResult:
            ...
    """

    def decorator(func: AuditExecutor) -> Audit:
        return Audit(AuditMetadata(name=name, description=description, group=group), func)

    return decorator
