"""Experiment configuration.

Provides:
- ExperimentConfig / ExperimentKind: validated, hashable experiment settings
- load_config: defaults < YAML file < SEQMC_* environment < explicit overrides
- to_yaml / from_yaml / dump_config: lossless YAML round trip
"""

from .loader import (
    ENV_FIELDS,
    dump_config,
    env_log_level,
    env_overrides,
    from_yaml,
    load_config,
    parse_config_text,
    to_yaml,
)
from .models import DEFAULT_SEED, ExperimentConfig, ExperimentKind


__all__ = [
    # Models
    "ExperimentConfig",
    "ExperimentKind",
    "DEFAULT_SEED",
    # Loading
    "load_config",
    "parse_config_text",
    "env_overrides",
    "env_log_level",
    "ENV_FIELDS",
    # Serialization
    "to_yaml",
    "from_yaml",
    "dump_config",
]
