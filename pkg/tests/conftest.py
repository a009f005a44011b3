"""Shared pytest fixtures for seqmc tests."""

from pathlib import Path

import pytest

from seqmc.audits.base import AuditResult
from seqmc.config import ExperimentConfig
from seqmc.config.loader import ENV_FIELDS
from seqmc.montecarlo import PriorKind, PriorSpec
from seqmc.procedures import ProcedureKind, ProcedureSpec, partition_for


# =============================================================================
# Environment fixtures
# =============================================================================


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    """Keep SEQMC_* variables and stray .env files out of every test."""
    for variable in (*ENV_FIELDS, "SEQMC_LOG_LEVEL"):
        monkeypatch.delenv(variable, raising=False)
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def temp_dir(tmp_path):
    """A scratch directory for configs and outputs."""
    return Path(tmp_path)


# =============================================================================
# Procedure fixtures
# =============================================================================


@pytest.fixture
def bh4():
    """BH at alpha = 0.1 on four hypotheses: thresholds 0.025 ... 0.1."""
    return ProcedureSpec(ProcedureKind.BH, 0.1, 4)


@pytest.fixture
def bh4_partition(bh4):
    return partition_for(bh4)


@pytest.fixture
def bh3():
    return ProcedureSpec(ProcedureKind.BH, 0.1, 3)


# =============================================================================
# Config fixtures
# =============================================================================


@pytest.fixture
def small_config():
    """A configuration small enough for unit-level simulation runs."""
    return ExperimentConfig(
        m=4,
        repetitions=8,
        cap=2000,
        m_values=(4, 6),
        caps=(100, 1000, 2000),
        prior=PriorSpec(kind=PriorKind.SANDVE_MIXTURE),
        master_seed=12345,
        coverage_p=(0.1,),
        coverage_horizon=200,
        random_instances=60,
        containment_instances=500,
        region_a_draws=20,
    )


@pytest.fixture
def config_file(temp_dir):
    """Write YAML text to a config file and return its path."""

    def write(text: str, name: str = "experiment.yaml") -> Path:
        path = temp_dir / name
        path.write_text(text, encoding="utf-8")
        return path

    return write


# =============================================================================
# Helper functions
# =============================================================================


def assert_audit_passed(result: AuditResult) -> None:
    """Assert that an audit finished without violations."""
    assert result.error_message is None, result.error_message
    assert result.violation_count == 0, [str(v) for v in result.violations]
    assert result.passed is True


def assert_audit_failed(result: AuditResult, expected_message: str | None = None) -> None:
    """Assert that an audit failed, optionally with a given error text."""
    assert result.passed is False
    if expected_message:
        assert expected_message in (result.error_message or result.summary)


# Make helpers available as fixtures
@pytest.fixture
def check_passed():
    """Fixture to access assert_audit_passed helper."""
    return assert_audit_passed


@pytest.fixture
def check_failed():
    """Fixture to access assert_audit_failed helper."""
    return assert_audit_failed
