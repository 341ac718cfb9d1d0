"""Seeded, portable random subset sampling.

The generator is SplitMix64 (Steele, Lea and Flood, 2014): state advances by
the golden-gamma constant and each output is the standard avalanche mix of
the new state.  Bounded draws use the top 32 bits times the bound, shifted
right by 32 (bias below bound / 2**32, irrelevant at n <= 2**20).

A k-subset of Z_n is drawn by a partial Fisher-Yates shuffle of 0..n-1:
for i in 0..k-1, swap position i with position i + bounded(n - i).
Everything here is plain 64-bit integer arithmetic, so the same seed gives
the same sets in any language.
"""

from __future__ import annotations

from .zn_core import ResidueSet

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def bounded(self, bound: int) -> int:
        """Uniform-ish integer in ``[0, bound)`` for ``1 <= bound <= 2**32``."""
        return ((self.next_u64() >> 32) * bound) >> 32

    def between(self, lo: int, hi: int) -> int:
        """Integer in the inclusive range ``[lo, hi]``."""
        return lo + self.bounded(hi - lo + 1)

    def subset(self, n: int, k: int) -> ResidueSet:
        """Uniform random k-subset of Z_n by partial shuffle."""
        if not 0 <= k <= n:
            raise ValueError(f"cannot draw {k} elements from Z_{n}")
        perm = list(range(n))
        bits = 0
        state = self.state
        # inlined next_u64 + bounded; this loop dominates random-mode runs
        for i in range(k):
            state = (state + GOLDEN_GAMMA) & MASK64
            z = ((state ^ (state >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
            z ^= z >> 31
            j = i + (((z >> 32) * (n - i)) >> 32)
            perm[i], perm[j] = perm[j], perm[i]
            bits |= 1 << perm[i]
        self.state = state
        return ResidueSet.from_mask(n, bits)
