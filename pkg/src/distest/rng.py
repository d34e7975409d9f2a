"""Deterministic random streams.

A stream is addressed by (seed, stream path). The path is a tuple fed to
numpy's SeedSequence spawn key, which gives independent-quality generators:
master seed -> per-trial stream (trial index) -> per-machine substream
(machine index). Identical addresses always replay identical draws; the
stream object itself is stateful and owned by one consumer at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class RngStream:
    seed: int
    stream_id: int = 0
    _path: tuple[int, ...] = ()
    _gen: np.random.Generator | None = field(default=None, repr=False, compare=False)

    @property
    def generator(self) -> np.random.Generator:
        if self._gen is None:
            ss = np.random.SeedSequence(
                entropy=self.seed, spawn_key=self._path + (self.stream_id,)
            )
            self._gen = np.random.Generator(np.random.PCG64(ss))
        return self._gen

    def substream(self, index: int) -> "RngStream":
        """Child stream; drawing from it never perturbs this stream."""
        return RngStream(self.seed, index, self._path + (self.stream_id,))

    # Thin draw helpers -------------------------------------------------

    def normal(self, loc=0.0, scale=1.0, size=None):
        return self.generator.normal(loc, scale, size)

    def uniform(self, low=0.0, high=1.0, size=None):
        return self.generator.uniform(low, high, size)

    def random(self, size=None):
        return self.generator.random(size)

    def integers(self, low, high=None, size=None):
        return self.generator.integers(low, high, size)

    def choice_without_replacement(self, n: int, k: int) -> np.ndarray:
        return self.generator.choice(n, size=k, replace=False)
