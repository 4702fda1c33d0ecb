"""Deterministic pseudo-random generator used throughout the package.

SplitMix64 is the single seeded generator backing tree sampling and the
Monte Carlo experiments.  The compiled kernel carries a bit-identical C
implementation, so results never depend on which kernel is active.
Sub-streams for parallel sampling are derived by drawing one 64-bit seed
per stream from a master generator, which makes results independent of
the number of worker threads.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """64-bit splitmix64 generator (Steele, Lea & Flood's mixing constants)."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next64(self) -> int:
        """Next 64-bit output word."""
        self.state = (self.state + _GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def uniform_label(self, n: int) -> int:
        """Uniform label in 1..n by masked rejection (no modulo bias).

        Takes the low bits of fresh 64-bit words and rejects values >= n,
        so every label is exactly equally likely.
        """
        if n < 1:
            raise ValueError("n must be positive")
        mask = (1 << (n - 1).bit_length()) - 1 if n > 1 else 0
        while True:
            r = self.next64() & mask
            if r < n:
                return r + 1


def derive_stream_seeds(seed: int, num_streams: int) -> list[int]:
    """Fixed sub-seed derivation: stream i gets the i-th word of a master
    generator seeded with `seed`."""
    master = SplitMix64(seed)
    return [master.next64() for _ in range(num_streams)]
