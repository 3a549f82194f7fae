"""
Explicitly seeded random streams.

RngState wraps numpy's PCG64 bit generator, whose output for a given seed
is the same on every platform.
"""

from typing import Optional

import numpy as np

from .exceptions import InvalidArgumentError

_SEED_MASK = (1 << 64) - 1


class RngState:
    """
    Reproducibility carrier for every random draw in the library.

    Drawing from the state advances it; two states built from the same
    seed produce identical streams.
    """

    def __init__(self, seed: int, spawn_key: tuple = ()):
        """
        Initialize from a 64-bit unsigned seed.

        Args:
            seed: Non-negative integer below 2**64
            spawn_key: Path of derive() keys leading to this stream
        """
        if not isinstance(seed, (int, np.integer)) or seed < 0 or seed > _SEED_MASK:
            raise InvalidArgumentError(f"seed must be an integer in [0, 2**64), got {seed!r}")
        self.seed = int(seed)
        self.spawn_key = tuple(int(k) for k in spawn_key)
        sequence = np.random.SeedSequence(self.seed, spawn_key=self.spawn_key)
        self._generator = np.random.Generator(np.random.PCG64(sequence))

    @property
    def generator(self) -> np.random.Generator:
        """Underlying numpy generator (advances on use)."""
        return self._generator

    def derive(self, *keys: int) -> 'RngState':
        """
        Child stream independent of this one and of its siblings.

        The child depends only on (seed, spawn_key, keys), never on how far
        the parent has been advanced.
        """
        return RngState(self.seed, self.spawn_key + tuple(keys))

    def __repr__(self) -> str:
        return f"RngState(seed={self.seed}, spawn_key={self.spawn_key})"


def as_rng(rng: Optional[object], default_seed: int = 0) -> RngState:
    """Accept an RngState, an integer seed or None."""
    if isinstance(rng, RngState):
        return rng
    if rng is None:
        return RngState(default_seed)
    return RngState(rng)
