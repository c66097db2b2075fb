"""Deterministic 64-bit RNG with derivable sub-streams.

Every random draw in the toolkit goes through SplitMix64 so that item
generation, letter assignment, and subsampling reproduce bit-for-bit across
platforms and Python versions. Sub-streams are derived from string/int labels,
which keeps per-item seeds independent of iteration order.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def _scramble(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Counter-based PRNG; tiny, fast, and stable across platforms."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _scramble(self._state)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) / float(1 << 53)

    def randrange(self, n: int) -> int:
        """Uniform int in [0, n) without modulo bias."""
        if n <= 0:
            raise ValueError("randrange() bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            draw = self.next_u64()
            if draw < limit:
                return draw % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform int in [lo, hi] inclusive."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.randrange(hi - lo + 1)

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def choice(self, seq):
        if not seq:
            raise ValueError("cannot choose from an empty sequence")
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, population, k: int) -> list:
        """k distinct elements, order random, via partial Fisher-Yates."""
        pool = list(population)
        if k > len(pool):
            raise ValueError("sample larger than population")
        for i in range(k):
            j = i + self.randrange(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


def fold_label(seed: int, *parts: int | str) -> int:
    """Fold labels into a 64-bit sub-seed (FNV-1a over the encoded parts)."""
    h = (_FNV_OFFSET ^ (seed & _MASK64)) * _FNV_PRIME & _MASK64
    for part in parts:
        if isinstance(part, int):
            data = b"i" + part.to_bytes(16, "little", signed=True)
        else:
            data = b"s" + str(part).encode("utf-8")
        for byte in data:
            h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    return _scramble(h)


def stream(seed: int, *parts: int | str) -> SplitMix64:
    """A SplitMix64 stream derived from a root seed and labels."""
    return SplitMix64(fold_label(seed, *parts))
