"""Seedable random source used by every sampler in the package.

The stream comes from numpy's ``PCG64`` bit generator (O'Neill's PCG XSL-RR
128/64), which takes a 64-bit integer seed through ``SeedSequence``, has
period 2**128 and ships published reference outputs.  Uniform variates are
built directly from the raw 64-bit words as ``((w >> 12) + 0.5) * 2**-52``.
The 52-bit midpoint grid keeps every value exactly representable, so the
result lies on the open interval (0, 1) and never needs a redraw.
"""

from __future__ import annotations

import numpy as np

DEFAULT_SEED = 20190520
_SEED_MAX = 2**64 - 1
_TWO_POW_M52 = 2.0**-52


def words_to_unit(words: np.ndarray) -> np.ndarray:
    """Map raw uint64 words onto the open interval (0, 1)."""
    return ((words >> np.uint64(12)).astype(np.float64) + 0.5) * _TWO_POW_M52


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= _SEED_MAX:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


class RandomSource:
    """Deterministic pseudo-random stream.

    Parameters
    ----------
    seed : int
        Unsigned 64-bit seed.  Identical seeds give identical streams.
    """

    def __init__(self, seed: int = DEFAULT_SEED) -> None:
        self.seed = check_seed(seed)
        self._bitgen = np.random.PCG64(self.seed)
        self._gen = np.random.Generator(self._bitgen)

    @classmethod
    def _from_bitgen(cls, bitgen: np.random.PCG64, seed: int) -> "RandomSource":
        src = cls.__new__(cls)
        src.seed = seed
        src._bitgen = bitgen
        src._gen = np.random.Generator(bitgen)
        return src

    def uniform(self, size: int | None = None):
        """Uniform variates on the open interval (0, 1)."""
        n = 1 if size is None else int(size)
        words = self._bitgen.random_raw(n)
        u = words_to_unit(words)
        return float(u[0]) if size is None else u

    def standard_normal(self, size: int | None = None):
        if size is None:
            return float(self._gen.standard_normal())
        return self._gen.standard_normal(int(size))

    def spawn(self, n: int) -> list["RandomSource"]:
        """Derive ``n`` independent child streams.

        Children depend only on the seed and their position, never on how much
        of the parent stream has been consumed.
        """
        children = np.random.SeedSequence(self.seed).spawn(n)
        return [
            RandomSource._from_bitgen(np.random.PCG64(ss), self.seed) for ss in children
        ]

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed})"
