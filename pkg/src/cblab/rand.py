"""Deterministic integer streams for reproducible instance generation.

Everything seeded in this package draws from SplitMix64 rather than the
stdlib ``random`` module, so byte-identical replay does not depend on the
interpreter's RNG internals.
"""

from __future__ import annotations

from zlib import crc32

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix:
    """SplitMix64 stream of 64-bit integers."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Integer in [0, n). Modulo bias is irrelevant at these sizes."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next_u64() % n

    def int_in(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi], inclusive."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.below(hi - lo + 1)

    def nonzero_int_in(self, lo: int, hi: int) -> int:
        while True:
            v = self.int_in(lo, hi)
            if v != 0:
                return v

    def fork(self, tag: int) -> "SplitMix":
        """Independent child stream; deterministic in (parent seed, tag)."""
        return SplitMix(self.next_u64() ^ (tag * _GOLDEN))


def stream(name: str, seed: int) -> SplitMix:
    """Named stream: distinct generators with the same seed do not collide."""
    return SplitMix((seed & _MASK) ^ (crc32(name.encode("utf-8")) * _GOLDEN))
