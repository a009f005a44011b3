"""Seeded, splittable Bernoulli exceedance streams.

Every substream is a Philox generator keyed by a SeedSequence spawn key
derived from (master_seed, repetition, hypothesis), so draws never depend on
which worker consumes them or in which order.
"""

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Any, Iterator

import numpy as np

from ..confseq.models import check_probability
from ..errors import RejectedInputError

MAX_SEED = 2**64 - 1
_ITER_CHUNK = 1024


class SeedDomain(IntEnum):
    """Independent families of substreams under one master seed."""

    PRIOR = 0
    STREAM = 1
    AUDIT = 2


@dataclass(frozen=True)
class StreamSeed:
    """Key of one substream."""

    master_seed: int
    repetition: int = 0
    hypothesis: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.master_seed <= MAX_SEED:
            raise RejectedInputError(
                f"master_seed must be an unsigned 64-bit integer, got {self.master_seed}"
            )
        if self.repetition < 0 or self.hypothesis < 0:
            raise RejectedInputError("repetition and hypothesis indices must be >= 0")

    def spawn_key(self, domain: SeedDomain) -> tuple[int, ...]:
        if domain is SeedDomain.PRIOR:
            return (int(domain), self.repetition)
        return (int(domain), self.repetition, self.hypothesis)

    def generator(self, domain: SeedDomain = SeedDomain.STREAM) -> np.random.Generator:
        sequence = np.random.SeedSequence(
            entropy=self.master_seed, spawn_key=self.spawn_key(domain)
        )
        return np.random.Generator(np.random.Philox(sequence))

    def for_hypothesis(self, hypothesis: int) -> "StreamSeed":
        return StreamSeed(self.master_seed, self.repetition, hypothesis)

    def to_dict(self) -> dict[str, Any]:
        return {
            "master_seed": self.master_seed,
            "repetition": self.repetition,
            "hypothesis": self.hypothesis,
        }


@dataclass
class BernoulliStream:
    """I.i.d. Bernoulli(p) exceedance indicators from one substream.

    A draw is ``u < p`` for the next uniform ``u``; since uniforms come out
    of the generator one at a time, ``take(a)`` followed by ``take(b)``
    yields the same indicators as ``take(a + b)``.
    """

    p: float
    seed: StreamSeed
    drawn: int = 0
    _generator: np.random.Generator | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        check_probability(self.p, "p", open_interval=False)

    def take(self, k: int) -> np.ndarray:
        """Next ``k`` indicators as a uint8 array."""
        if k < 0:
            raise RejectedInputError(f"cannot take a negative number of draws ({k})")
        if self._generator is None:
            self._generator = self.seed.generator(SeedDomain.STREAM)
        self.drawn += k
        return (self._generator.random(k) < self.p).astype(np.uint8)

    def __iter__(self) -> Iterator[int]:
        while True:
            yield from (int(x) for x in self.take(_ITER_CHUNK))


def bernoulli_stream(p: float, seed: StreamSeed) -> BernoulliStream:
    return BernoulliStream(p=p, seed=seed)
