from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np


@dataclass
class RngStream:
    """A seeded, splittable random stream.

    Replaying the same ``seed`` (and ``spawn_key``) reproduces every draw. Substreams
    from :meth:`spawn` are statistically independent of the parent and of each other.
    """
    seed: int
    spawn_key: Tuple[int, ...] = ()
    _sequence: np.random.SeedSequence = field(init=False, repr=False)
    generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.seed = int(self.seed) & 0xFFFFFFFFFFFFFFFF
        self._sequence = np.random.SeedSequence(self.seed, spawn_key=tuple(self.spawn_key))
        self.generator = np.random.Generator(np.random.PCG64(self._sequence))

    def spawn(self, count: int) -> List["RngStream"]:
        """Independent child streams, numbered deterministically."""
        base = self._sequence.n_children_spawned
        children = self._sequence.spawn(count)
        return [
            RngStream(self.seed, spawn_key=tuple(self.spawn_key) + (base + i,))
            for i, _ in enumerate(children)
        ]

    def uniform(self) -> float:
        return float(self.generator.random())

    def integers(self, low: int, high: int) -> int:
        """Uniform integer in [low, high]."""
        return int(self.generator.integers(low, high + 1))


def as_generator(rng: "RngStream | np.random.Generator | int") -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator
    if isinstance(rng, np.random.Generator):
        return rng
    return RngStream(int(rng)).generator
