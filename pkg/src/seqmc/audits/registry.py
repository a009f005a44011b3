"""Audit registry for looking up and running audits."""

import logging
import time
from typing import TYPE_CHECKING

from .base import Audit, AuditResult

if TYPE_CHECKING:
    from ..config.models import ExperimentConfig

logger = logging.getLogger(__name__)


class AuditRegistry:
    """Registry for managing audits.

    Supports:
    - Audit registration by group
    - Lookup by name
    - Running one audit or a selection, with exceptions turned into
      failed results
    """

    def __init__(self) -> None:
        self._audits: dict[str, Audit] = {}
        self._groups: dict[str, list[str]] = {}

    def register(self, audit: Audit) -> None:
        self._audits[audit.name] = audit
        names = self._groups.setdefault(audit.group, [])
        if audit.name not in names:
            names.append(audit.name)

    def get(self, name: str) -> Audit | None:
        return self._audits.get(name)

    def get_by_group(self, group: str) -> list[Audit]:
        return [self._audits[name] for name in self._groups.get(group, [])]

    def execute(self, name: str, config: "ExperimentConfig") -> AuditResult:
        """Run one audit by name.

        Never raises for failures inside the audit: an exception becomes a
        failed ``AuditResult`` carrying its message.
        """
        audit = self._audits.get(name)
        if audit is None:
            return AuditResult.from_error(f"unknown audit '{name}'", name)

        logger.info("running audit %s", name)
        started = time.perf_counter()
        try:
            result = audit.execute(config)
        except Exception as e:
            logger.exception("audit %s raised", name)
            return AuditResult.from_error(f"{type(e).__name__}: {e}", name)
        result.details.setdefault("seconds", round(time.perf_counter() - started, 3))
        return result

    def run(self, names: list[str], config: "ExperimentConfig") -> list[AuditResult]:
        return [self.execute(name, config) for name in names]

    @property
    def groups(self) -> list[str]:
        return list(self._groups)

    @property
    def names(self) -> list[str]:
        return list(self._audits)

    def __len__(self) -> int:
        return len(self._audits)

    def __contains__(self, name: str) -> bool:
        return name in self._audits

