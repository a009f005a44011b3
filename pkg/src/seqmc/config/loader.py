"""YAML config files and environment overrides."""

import logging
import os
from pathlib import Path
from typing import Any

import yaml
from dotenv import find_dotenv, load_dotenv

from ..errors import ConfigError
from .models import ExperimentConfig

logger = logging.getLogger(__name__)

ENV_PREFIX = "SEQMC_"
# environment variable -> config field
ENV_FIELDS = {
    "SEQMC_SEED": "master_seed",
    "SEQMC_WORKERS": "workers",
    "SEQMC_CAP": "cap",
    "SEQMC_REPS": "repetitions",
}


def parse_config_text(text: str) -> dict[str, Any]:
    """Parse YAML text into a mapping.

    Raises:
        ConfigError: If the text is not YAML or not a mapping.
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError([f"config: not valid YAML ({e})"]) from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(["config: top level must be a mapping"])
    return data


def to_yaml(config: ExperimentConfig) -> str:
    return yaml.safe_dump(config.to_dict(), sort_keys=True, default_flow_style=False)


def from_yaml(text: str) -> ExperimentConfig:
    return ExperimentConfig.from_dict(parse_config_text(text))


def env_overrides() -> dict[str, Any]:
    """Config fields set through ``SEQMC_*`` variables (and a ``.env`` file)."""
    load_dotenv(find_dotenv(usecwd=True))
    overrides: dict[str, Any] = {}
    problems = []
    for variable, name in ENV_FIELDS.items():
        raw = os.getenv(variable)
        if raw is None or raw.strip() == "":
            continue
        try:
            overrides[name] = int(raw)
        except ValueError:
            problems.append(f"{name}: {variable}={raw!r} is not an integer")
    if problems:
        raise ConfigError(problems)
    return overrides


def env_log_level(default: str = "WARNING") -> str:
    load_dotenv(find_dotenv(usecwd=True))
    return os.getenv(f"{ENV_PREFIX}LOG_LEVEL", default).upper()


def load_config(
    path: str | Path | None = None,
    *,
    use_env: bool = True,
    **overrides: Any,
) -> ExperimentConfig:
    """Resolve a configuration: defaults < file < environment < ``overrides``.

    ``overrides`` with value None are ignored, so CLI flags that were not
    given fall through.

    Raises:
        ConfigError: On an unreadable file, unknown fields or invalid values.
    """
    data: dict[str, Any] = {}
    if path is not None:
        config_path = Path(path)
        try:
            text = config_path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError([f"config: cannot read {config_path} ({e.strerror})"]) from e
        data = parse_config_text(text)
        logger.info("loaded config from %s", config_path)

    if use_env:
        data.update(env_overrides())
    data.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig.from_dict(data).validate()


def dump_config(config: ExperimentConfig, path: str | Path) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(to_yaml(config), encoding="utf-8")
    return target
