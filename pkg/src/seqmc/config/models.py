"""Experiment configuration."""

import hashlib
import json
from dataclasses import dataclass, field, fields, replace
from enum import Enum
from typing import Any

from ..confseq.engines import create_default_registry
from ..confseq.models import SpendingSchedule
from ..errors import ConfigError, RejectedInputError
from ..montecarlo.experiment import STOPPING_TIME_KINDS
from ..montecarlo.priors import PriorKind, PriorSpec
from ..montecarlo.streams import MAX_SEED
from ..procedures.models import ProcedureKind, ProcedureSpec


class ExperimentKind(Enum):
    """What ``seqmc`` runs for a configuration."""

    FIG1 = "fig1"
    RUNTIME_DIVERGENCE = "runtime-divergence"
    COVERAGE_AUDIT = "coverage-audit"
    BOUND_AUDIT = "bound-audit"
    PARTIAL_DECISION_AUDIT = "partial-decision-audit"

    @property
    def is_audit(self) -> bool:
        return self.value.endswith("-audit")


DEFAULT_SEED = 20240601
UNHASHED_FIELDS = frozenset({"output", "workers"})


def _default_prior() -> PriorSpec:
    return PriorSpec(kind=PriorKind.SANDVE_MIXTURE, pi0=0.8, a=0.5, b=25.0)


@dataclass(frozen=True)
class ExperimentConfig:
    """All inputs of one experiment.

    Instances are immutable; use ``with_overrides`` to derive variants.
    ``validate`` reports every offending field in a single ``ConfigError``.
    """

    kind: ExperimentKind = ExperimentKind.FIG1
    m: int = 10
    repetitions: int = 1000
    alpha: float = 0.1
    procedure: ProcedureKind = ProcedureKind.BH
    prior: PriorSpec = field(default_factory=_default_prior)
    engine: str = "cp"
    epsilon: float = 0.01
    cap: int = 10**6
    master_seed: int = DEFAULT_SEED
    output: str | None = None

    # fig1 / divergence
    m_values: tuple[int, ...] = (10, 100)
    caps: tuple[int, ...] = (10**3, 10**4, 10**5)
    leave_undecided: int = 2
    workers: int = 1
    stopping_time: str = "operational"

    # audits
    coverage_p: tuple[float, ...] = (0.01, 0.05, 0.1, 0.5)
    coverage_horizon: int = 10**4
    lemma2_p: tuple[float, ...] = (0.01, 0.1)
    random_instances: int = 10**4
    containment_instances: int = 10**5
    region_a_draws: int = 10**3

    def procedure_spec(self, m: int | None = None) -> ProcedureSpec:
        return ProcedureSpec(self.procedure, self.alpha, self.m if m is None else m)

    @property
    def schedule(self) -> SpendingSchedule:
        return SpendingSchedule(self.epsilon)

    def with_overrides(self, **changes: Any) -> "ExperimentConfig":
        """Copy with the non-None ``changes`` applied."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def validate(self) -> "ExperimentConfig":
        """Check every field against its documented range.

        Raises:
            ConfigError: Listing each offending field.
        """
        problems: list[str] = []

        def check(condition: bool, name: str, message: str) -> None:
            if not condition:
                problems.append(f"{name}: {message}")

        check(self.m >= 1, "m", f"must be >= 1, got {self.m}")
        check(self.repetitions >= 0, "repetitions", f"must be >= 0, got {self.repetitions}")
        check(0.0 < self.alpha < 1.0, "alpha", f"must lie in (0, 1), got {self.alpha}")
        check(0.0 < self.epsilon < 1.0, "epsilon", f"must lie in (0, 1), got {self.epsilon}")
        check(self.cap >= 1, "cap", f"must be >= 1, got {self.cap}")
        check(
            0 <= self.master_seed <= MAX_SEED,
            "master_seed",
            f"must be an unsigned 64-bit integer, got {self.master_seed}",
        )
        engines = create_default_registry()
        check(
            self.engine in engines,
            "engine",
            f"must be one of {engines.names}, got '{self.engine}'",
        )
        check(
            bool(self.m_values) and all(m >= 1 for m in self.m_values),
            "m_values",
            f"must be a non-empty list of positive counts, got {list(self.m_values)}",
        )
        check(
            bool(self.caps) and all(c >= 1 for c in self.caps) and list(self.caps) == sorted(self.caps),
            "caps",
            f"must be an ascending non-empty list of positive caps, got {list(self.caps)}",
        )
        check(
            0 <= self.leave_undecided <= min((self.m, *self.m_values)),
            "leave_undecided",
            f"must lie in [0, m], got {self.leave_undecided}",
        )
        check(self.workers >= 1, "workers", f"must be >= 1, got {self.workers}")
        check(
            self.stopping_time in STOPPING_TIME_KINDS,
            "stopping_time",
            f"must be one of {list(STOPPING_TIME_KINDS)}, got '{self.stopping_time}'",
        )
        check(
            bool(self.coverage_p) and all(0.0 < p < 1.0 for p in self.coverage_p),
            "coverage_p",
            "must be a non-empty list of probabilities in (0, 1)",
        )
        check(self.coverage_horizon >= 1, "coverage_horizon", "must be >= 1")
        check(
            all(0.0 < p < 1.0 for p in self.lemma2_p),
            "lemma2_p",
            "must hold probabilities in (0, 1)",
        )
        check(self.random_instances >= 0, "random_instances", "must be >= 0")
        check(self.containment_instances >= 0, "containment_instances", "must be >= 0")
        check(self.region_a_draws >= 0, "region_a_draws", "must be >= 0")

        if problems:
            raise ConfigError(problems)
        return self

    def to_dict(self) -> dict[str, Any]:
        """Plain-data form; ``from_dict(to_dict())`` reproduces the config."""
        data: dict[str, Any] = {}
        for item in fields(self):
            value = getattr(self, item.name)
            if isinstance(value, Enum):
                value = value.value
            elif isinstance(value, PriorSpec):
                value = value.to_dict()
            elif isinstance(value, tuple):
                value = list(value)
            data[item.name] = value
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ExperimentConfig":
        """Build a config from plain data; missing keys keep their defaults.

        Raises:
            ConfigError: On unknown keys or values of the wrong type.
        """
        known = {item.name: item for item in fields(cls)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise ConfigError([f"{name}: unknown field" for name in unknown])

        problems: list[str] = []
        kwargs: dict[str, Any] = {}
        for name, value in data.items():
            try:
                kwargs[name] = _coerce(name, value)
            except (TypeError, ValueError, KeyError) as e:
                problems.append(f"{name}: {e}")
        if problems:
            raise ConfigError(problems)
        return cls(**kwargs)

    def config_hash(self) -> str:
        """First 16 hex digits of SHA-256 over the canonical JSON form.

        Fields that cannot change results (output path, worker count) are left out.
        """
        data = {k: v for k, v in self.to_dict().items() if k not in UNHASHED_FIELDS}
        canonical = json.dumps(data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


_INT_FIELDS = {
    "m",
    "repetitions",
    "cap",
    "master_seed",
    "leave_undecided",
    "workers",
    "coverage_horizon",
    "random_instances",
    "containment_instances",
    "region_a_draws",
}
_FLOAT_FIELDS = {"alpha", "epsilon"}
_INT_TUPLES = {"m_values", "caps"}
_FLOAT_TUPLES = {"coverage_p", "lemma2_p"}


def _as_int(value: Any) -> int:
    # YAML reads 1e6 as a string and 1.0e+6 as a float
    if isinstance(value, bool):
        raise TypeError(f"expected an integer, got {value!r}")
    number = float(value) if isinstance(value, str) else value
    if isinstance(number, float):
        if not number.is_integer():
            raise ValueError(f"expected an integer, got {value!r}")
        return int(number)
    if isinstance(number, int):
        return number
    raise TypeError(f"expected an integer, got {value!r}")


def _coerce(name: str, value: Any) -> Any:
    if name == "kind":
        return ExperimentKind(value)
    if name == "procedure":
        return ProcedureKind(value)
    if name == "prior":
        if isinstance(value, PriorSpec):
            return value
        try:
            return PriorSpec.from_dict(dict(value))
        except RejectedInputError as e:
            raise ValueError(str(e)) from e
    if name in _INT_FIELDS:
        return _as_int(value)
    if name in _FLOAT_FIELDS:
        return float(value)
    if name in _INT_TUPLES:
        return tuple(_as_int(v) for v in value)
    if name in _FLOAT_TUPLES:
        return tuple(float(v) for v in value)
    if name == "output":
        return None if value is None else str(value)
    return str(value)
