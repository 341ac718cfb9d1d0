"""Restricted sumsets h^A and unrestricted sumsets hA in Z_n."""

from __future__ import annotations

import itertools
import math

from .zn_core import ResidueSet, full_mask

NAIVE_CEILING = 10**7


def _layers(n: int, bits: int, h: int) -> list[int]:
    """Bit layers ``L[j] = j^A`` for ``j <= h`` via 0/1-knapsack over elements of A.

    Elements are taken in ascending order; layers update high to low so each
    element enters a given sum at most once.
    """
    mask = full_mask(n)
    layers = [1] + [0] * h
    used = 0
    while bits:
        low = bits & -bits
        a = low.bit_length() - 1
        bits ^= low
        used += 1
        for j in range(min(h, used), 0, -1):
            prev = layers[j - 1]
            if prev:
                if a:
                    prev = ((prev << a) | (prev >> (n - a))) & mask
                layers[j] |= prev
    return layers


def restricted_bits(n: int, bits: int, h: int) -> int:
    if h < 0:
        raise ValueError("h must be nonnegative")
    if h > bits.bit_count():
        return 0
    return _layers(n, bits, h)[h]


def restricted_sumset(A: ResidueSet, h: int) -> ResidueSet:
    """Sums of h pairwise distinct elements of A; ``{0}`` for h = 0."""
    return ResidueSet.from_mask(A.n, restricted_bits(A.n, A.bits, h))


def sumset_layers(A: ResidueSet, h_max: int) -> list[ResidueSet]:
    """``[0^A, 1^A, ..., h_max^A]`` from a single DP pass."""
    if h_max < 0:
        raise ValueError("h_max must be nonnegative")
    return [ResidueSet.from_mask(A.n, b) for b in _layers(A.n, A.bits, h_max)]


def restricted_size(A: ResidueSet, h: int) -> int:
    return restricted_bits(A.n, A.bits, h).bit_count()


def unrestricted_sumset(A: ResidueSet, h: int) -> ResidueSet:
    """Sums of h elements of A with repetition allowed."""
    if h < 0:
        raise ValueError("h must be nonnegative")
    n, mask = A.n, full_mask(A.n)
    acc = 1
    for _ in range(h):
        nxt = 0
        for a in A:
            nxt |= ((acc << a) | (acc >> (n - a))) & mask if a else acc
        acc = nxt
    return ResidueSet.from_mask(n, acc)


def restricted_sumset_naive(A: ResidueSet, h: int, *, ceiling: int = NAIVE_CEILING) -> ResidueSet:
    """Enumerate every h-subset of A explicitly. Oracle for :func:`restricted_sumset`."""
    if h < 0:
        raise ValueError("h must be nonnegative")
    combos = math.comb(A.card, h)
    if combos > ceiling:
        raise ValueError(f"C({A.card}, {h}) = {combos} combinations exceeds ceiling {ceiling}")
    n = A.n
    return ResidueSet(n, (sum(c) % n for c in itertools.combinations(A.elements(), h)))
