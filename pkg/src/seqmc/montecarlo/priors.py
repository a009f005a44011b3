"""P-value priors for simulated hypotheses."""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Sequence

import numpy as np

from ..confseq.models import check_probability
from ..errors import RejectedInputError
from .streams import SeedDomain, StreamSeed


class PriorKind(Enum):
    UNIFORM = "uniform"
    SANDVE_MIXTURE = "sandve-mixture"
    REGION_A = "region-a"
    POINT_MASS = "point-mass"


@dataclass(frozen=True)
class PriorSpec:
    """Distribution of the true p-values of one repetition.

    ``lower``/``upper`` bound the uniform prior (default [0, 1]). ``pi0``,
    ``a`` and ``b`` parameterise the mixture of a uniform null fraction with
    Beta(a, b) alternatives. ``eta`` is the region-A margin; when unset it
    defaults to one eighth of the gap between the two largest thresholds.
    """

    kind: PriorKind = PriorKind.UNIFORM
    lower: float = 0.0
    upper: float = 1.0
    pi0: float = 0.8
    a: float = 0.5
    b: float = 25.0
    eta: float | None = None
    p: float | None = None

    def __post_init__(self) -> None:
        problems = []
        if not 0.0 <= self.lower < self.upper <= 1.0:
            problems.append(f"uniform bounds need 0 <= lower < upper <= 1, got [{self.lower}, {self.upper}]")
        if not 0.0 <= self.pi0 <= 1.0:
            problems.append(f"pi0 must lie in [0, 1], got {self.pi0}")
        if self.a <= 0.0 or self.b <= 0.0:
            problems.append(f"beta shapes must be positive, got a={self.a}, b={self.b}")
        if self.eta is not None and self.eta <= 0.0:
            problems.append(f"eta must be positive, got {self.eta}")
        if self.kind is PriorKind.POINT_MASS:
            if self.p is None:
                problems.append("a point-mass prior needs p")
            else:
                check_probability(self.p, "p", open_interval=False)
        if problems:
            raise RejectedInputError("; ".join(problems))

    @property
    def mean(self) -> float:
        """Analytic mean (region A depends on thresholds and has none here)."""
        if self.kind is PriorKind.UNIFORM:
            return (self.lower + self.upper) / 2.0
        if self.kind is PriorKind.SANDVE_MIXTURE:
            return self.pi0 * 0.5 + (1.0 - self.pi0) * self.a / (self.a + self.b)
        if self.kind is PriorKind.POINT_MASS:
            return float(self.p)
        raise RejectedInputError("region-A prior has no threshold-free mean")

    def to_dict(self) -> dict[str, Any]:
        """Every field, including those the kind ignores, so the form round-trips."""
        return {
            "kind": self.kind.value,
            "lower": self.lower,
            "upper": self.upper,
            "pi0": self.pi0,
            "a": self.a,
            "b": self.b,
            "eta": self.eta,
            "p": self.p,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PriorSpec":
        known = {"lower", "upper", "pi0", "a", "b", "eta", "p"}
        unknown = set(data) - known - {"kind"}
        if unknown:
            raise RejectedInputError(f"unknown prior fields: {sorted(unknown)}")
        kwargs = {key: data[key] for key in known if data.get(key) is not None}
        return cls(kind=PriorKind(data.get("kind", "uniform")), **kwargs)


def region_a_margin(spec: PriorSpec, thresholds: Sequence[float]) -> float:
    """Validated eta for a region-A prior against the two largest thresholds."""
    if len(thresholds) < 2:
        raise RejectedInputError("region A needs at least two thresholds")
    gap = thresholds[-1] - thresholds[-2]
    eta = gap / 8.0 if spec.eta is None else spec.eta
    if not 0.0 < eta < gap / 4.0:
        raise RejectedInputError(
            f"region-A eta must lie in (0, {gap / 4.0:g}) for these thresholds, got {eta}"
        )
    if thresholds[-1] + eta > 1.0:
        raise RejectedInputError("region A would extend beyond p = 1")
    return eta


def sample_prior(
    spec: PriorSpec,
    m: int,
    seed: StreamSeed,
    thresholds: Sequence[float] | None = None,
) -> np.ndarray:
    """Draw ``m`` true p-values for the repetition keyed by ``seed``.

    Region A needs the procedure ``thresholds``: coordinates 0..m-2 are
    uniform on [a_{L-1} + 2 eta, a_L - 2 eta] and the last one is uniform on
    [a_L - eta, a_L + eta], so the last coordinate is always the largest.

    Raises:
        RejectedInputError: On m < 1, or region A without thresholds or
            with an invalid eta.
    """
    if m < 1:
        raise RejectedInputError(f"m must be >= 1, got {m}")
    rng = seed.generator(SeedDomain.PRIOR)

    if spec.kind is PriorKind.UNIFORM:
        return rng.uniform(spec.lower, spec.upper, m)

    if spec.kind is PriorKind.SANDVE_MIXTURE:
        is_null = rng.random(m) < spec.pi0
        null_draws = rng.random(m)
        alternative_draws = rng.beta(spec.a, spec.b, m)
        return np.where(is_null, null_draws, alternative_draws)

    if spec.kind is PriorKind.REGION_A:
        if thresholds is None:
            raise RejectedInputError("region-A sampling needs the procedure thresholds")
        eta = region_a_margin(spec, thresholds)
        below, top = thresholds[-2], thresholds[-1]
        values = np.empty(m)
        values[:-1] = rng.uniform(below + 2.0 * eta, top - 2.0 * eta, m - 1)
        values[-1] = rng.uniform(top - eta, top + eta)
        return values

    return np.full(m, float(spec.p))
