"""SplitMix64, the one PRNG used wherever the package needs randomness.

The generator is fixed by contract: given the same seed, every release
produces bit-identical streams.  SplitMix64 keeps a 64-bit counter that
advances by a fixed odd constant, and each output is a pure function of
the counter value, so the k-th output depends only on (seed, k).  That
makes whole streams computable in one vectorized numpy pass.

Reference constants are the standard SplitMix64 ones (Steele, Lea &
Flood's java.util.SplittableRandom finalizer).
"""

from __future__ import annotations

import numpy as np

_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1F4E7609
_MIX2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1


def mix64(x: int) -> int:
    """Finalize one 64-bit state value into one output word."""
    z = x & _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def stream(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs ``start .. start+count-1`` of the stream for ``seed`` as uint64."""
    base = np.uint64(seed & _MASK)
    ks = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = base + ks * np.uint64(_GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
    return z


class SplitMix64:
    """Sequential cursor over one SplitMix64 stream."""

    def __init__(self, seed: int):
        self.seed = seed & _MASK
        self._pos = 0

    def next_uint64(self) -> int:
        self._pos += 1
        return mix64((self.seed + self._pos * _GOLDEN) & _MASK)

    def block(self, count: int) -> np.ndarray:
        """Next ``count`` raw 64-bit outputs."""
        out = stream(self.seed, self._pos, count)
        self._pos += count
        return out

    def uniform_below(self, n: int, count: int) -> np.ndarray:
        """``count`` exactly-uniform draws from ``range(n)``.

        Uses rejection against the largest multiple of n below 2**64, so
        there is no modulo bias; the accepted subsequence is a pure
        function of the stream and therefore reproducible.
        """
        if n <= 0:
            raise ValueError("n must be positive")
        if n == 1:
            return np.zeros(count, dtype=np.int64)
        limit = np.uint64(((1 << 64) // n) * n - 1)  # accept v <= limit
        pieces: list[np.ndarray] = []
        have = 0
        while have < count:
            chunk = self.block(max(1024, 2 * (count - have)))
            good = chunk[chunk <= limit]
            pieces.append(good)
            have += good.size
        accepted = np.concatenate(pieces)[:count]
        return (accepted % np.uint64(n)).astype(np.int64)

    def uniform_pairs(self, n: int, count: int) -> tuple[np.ndarray, np.ndarray]:
        """``count`` uniform ordered pairs over ``range(n)``, drawn interleaved."""
        flat = self.uniform_below(n, 2 * count)
        return flat[0::2], flat[1::2]
