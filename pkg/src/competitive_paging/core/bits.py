"""Replayable random bit streams.

The stream for a seed is a pure function of ``(seed, position)``:

* word ``w`` (0-based) is ``splitmix64_mix(seed + (w + 1) * GOLDEN)`` (mod 2**64);
* bit ``p`` of the stream is bit ``p % 64`` of word ``p // 64``, least
  significant bit first.

``bits(width)`` reads ``width`` consecutive bits and assembles them most
significant bit first.  ``randbelow(m)`` reads blocks of
``width = (m - 1).bit_length()`` bits and rejects values ``>= m``; ``m == 1``
consumes nothing.  Because the stream is random-access, several readers can
share one stream by keeping their own cursor positions.
"""

from __future__ import annotations

from .errors import RandomnessAccessError

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def splitmix64_mix(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, index: int) -> int:
    """Per-trial seed: ``splitmix64_mix(master + (index + 1) * GOLDEN)``."""
    return splitmix64_mix((master_seed & MASK64) + (index + 1) * GOLDEN)


class RandomSource:
    """Cursor into the unbounded bit stream determined by ``seed``."""

    __slots__ = ("seed", "position", "_word_index", "_word")

    def __init__(self, seed: int = 0, position: int = 0):
        self.seed = seed & MASK64
        self.position = position
        self._word_index = -1
        self._word = 0

    def _load(self, index: int) -> int:
        if index != self._word_index:
            self._word_index = index
            self._word = splitmix64_mix(self.seed + (index + 1) * GOLDEN)
        return self._word

    def bit(self) -> int:
        p = self.position
        self.position = p + 1
        return (self._load(p >> 6) >> (p & 63)) & 1

    def bits(self, width: int) -> int:
        value = 0
        for _ in range(width):
            value = (value << 1) | self.bit()
        return value

    def randbelow(self, m: int) -> int:
        if m <= 0:
            raise ValueError("randbelow needs m >= 1")
        if m == 1:
            return 0
        width = (m - 1).bit_length()
        while True:
            r = self.bits(width)
            if r < m:
                return r

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed:#x}, position={self.position})"


class NoRandomness:
    """Stand-in source for code paths that must stay deterministic."""

    position = 0

    def _refuse(self, *args):
        raise RandomnessAccessError("deterministic path attempted to read random bits")

    bit = bits = randbelow = _refuse
