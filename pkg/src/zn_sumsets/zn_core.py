"""Residue sets and count vectors over the cyclic group Z_n.

A :class:`ResidueSet` packs a subset of Z_n into a Python integer used as a
bit vector (bit ``i`` set means residue ``i`` is a member).  Python integers
are arbitrary width, so the word size is an implementation detail that never
leaks into set semantics.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

MAX_MODULUS = 1 << 20
DEFAULT_EXHAUSTIVE_CEILING = 24
CEILING_ENV_VAR = "ZN_EXHAUSTIVE_CEILING"


class ParseError(ValueError):
    """Raised for malformed set literals."""


def check_modulus(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"modulus must be an int, got {type(n).__name__}")
    if not 1 <= n <= MAX_MODULUS:
        raise ValueError(f"modulus n={n} outside [1, {MAX_MODULUS}]")
    return n


def full_mask(n: int) -> int:
    return (1 << n) - 1


def even_mask(n: int) -> int:
    """Bitmask of the even residues of Z_n (the subgroup E when n is even)."""
    return sum(1 << i for i in range(0, n, 2))


def exhaustive_ceiling(override: int | None = None) -> int:
    """Largest n allowed for exhaustive subset enumeration.

    An explicit ``override`` wins, then the ``ZN_EXHAUSTIVE_CEILING``
    environment variable, then the default of 24.
    """
    if override is not None:
        return int(override)
    env = os.environ.get(CEILING_ENV_VAR)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{CEILING_ENV_VAR}={env!r} is not an integer") from None
    return DEFAULT_EXHAUSTIVE_CEILING


class ResidueSet:
    """Immutable subset of Z_n stored as a bitmask with a cached cardinality."""

    __slots__ = ("n", "bits", "card")

    def __init__(self, n: int, elements: Iterable[int] = ()) -> None:
        check_modulus(n)
        bits = 0
        for x in elements:
            bits |= 1 << (int(x) % n)
        self._set(n, bits)

    def _set(self, n: int, bits: int) -> None:
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "card", bits.bit_count())

    def __setattr__(self, name, value):
        raise AttributeError("ResidueSet is immutable")

    @classmethod
    def from_mask(cls, n: int, bits: int) -> "ResidueSet":
        if bits < 0 or bits >> n:
            raise ValueError(f"bitmask {bits:#x} has bits outside [0, {n})")
        self = cls.__new__(cls)
        self._set(n, bits)
        return self

    @classmethod
    def universe(cls, n: int) -> "ResidueSet":
        return cls.from_mask(check_modulus(n), full_mask(n))

    @classmethod
    def empty(cls, n: int) -> "ResidueSet":
        return cls.from_mask(check_modulus(n), 0)

    @classmethod
    def evens(cls, n: int) -> "ResidueSet":
        return cls.from_mask(check_modulus(n), even_mask(n))

    @classmethod
    def odds(cls, n: int) -> "ResidueSet":
        return cls.from_mask(check_modulus(n), full_mask(n) & ~even_mask(n))

    @classmethod
    def parse(cls, n: int, literal: str) -> "ResidueSet":
        """Parse ``"0,1,2,5"`` or a little-endian hex bitmask ``"0x27"``.

        Residues must already lie in ``[0, n)``; duplicates are rejected.
        """
        check_modulus(n)
        text = literal.strip()
        if text.lower().startswith("0x"):
            try:
                bits = int(text[2:], 16)
            except ValueError:
                raise ParseError(f"bad hex bitmask {text!r}") from None
            if bits >> n:
                raise ParseError(f"bitmask {text!r} has bits at or above n={n}")
            return cls.from_mask(n, bits)
        if not text:
            return cls.empty(n)
        bits = 0
        for token in text.split(","):
            tok = token.strip()
            try:
                x = int(tok)
            except ValueError:
                raise ParseError(f"bad residue token {tok!r}") from None
            if not 0 <= x < n:
                raise ParseError(f"residue token {tok!r} outside [0, {n})")
            if bits >> x & 1:
                raise ParseError(f"duplicate residue token {tok!r}")
            bits |= 1 << x
        return cls.from_mask(n, bits)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return self.card

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and 0 <= x < self.n and bool(self.bits >> x & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ResidueSet):
            return NotImplemented
        return self.n == other.n and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __repr__(self) -> str:
        return f"ResidueSet(n={self.n}, {{{self.literal()}}})"

    def __le__(self, other: "ResidueSet") -> bool:
        return self.n == other.n and self.bits & ~other.bits == 0

    def __or__(self, other: "ResidueSet") -> "ResidueSet":
        _same_modulus(self, other)
        return ResidueSet.from_mask(self.n, self.bits | other.bits)

    def __and__(self, other: "ResidueSet") -> "ResidueSet":
        _same_modulus(self, other)
        return ResidueSet.from_mask(self.n, self.bits & other.bits)

    def __sub__(self, other: "ResidueSet") -> "ResidueSet":
        _same_modulus(self, other)
        return ResidueSet.from_mask(self.n, self.bits & ~other.bits)

    def elements(self) -> tuple[int, ...]:
        return tuple(self)

    def literal(self) -> str:
        return ",".join(map(str, self))

    def is_full(self) -> bool:
        return self.bits == full_mask(self.n)

    def complement(self) -> "ResidueSet":
        return ResidueSet.from_mask(self.n, full_mask(self.n) & ~self.bits)

    def translate(self, t: int) -> "ResidueSet":
        return translate(self, t)

    def dilate(self, u: int) -> "ResidueSet":
        return dilate(self, u)

    def negate(self) -> "ResidueSet":
        return ResidueSet(self.n, (-a for a in self))


def _same_modulus(a: ResidueSet, b: ResidueSet) -> None:
    if a.n != b.n:
        raise ValueError(f"modulus mismatch: {a.n} vs {b.n}")


def rotate(bits: int, t: int, n: int) -> int:
    """Cyclic left shift of an n-bit mask: the image of the set under x -> x + t."""
    t %= n
    if t == 0:
        return bits
    return ((bits << t) | (bits >> (n - t))) & full_mask(n)


def translate(A: ResidueSet, t: int) -> ResidueSet:
    return ResidueSet.from_mask(A.n, rotate(A.bits, t, A.n))


def dilate(A: ResidueSet, u: int) -> ResidueSet:
    n = A.n
    if math.gcd(u, n) != 1:
        raise ValueError(f"{u} is not a unit mod {n}")
    return ResidueSet(n, (u * a for a in A))


def parity_split(A: ResidueSet) -> tuple[ResidueSet, ResidueSet]:
    """Return ``(A_e, A_o)``, the even and odd elements of A."""
    if A.n % 2:
        raise ValueError(f"parity split undefined for odd n={A.n}")
    ev = even_mask(A.n)
    return ResidueSet.from_mask(A.n, A.bits & ev), ResidueSet.from_mask(A.n, A.bits & ~ev)


def iter_masks(
    n: int,
    size_min: int = 0,
    size_max: int | None = None,
    lo: int = 0,
    hi: int | None = None,
) -> Iterator[int]:
    """Yield bitmasks in ``[lo, hi)`` with popcount in ``[size_min, size_max]``, ascending."""
    if size_max is None:
        size_max = n
    if hi is None:
        hi = 1 << n
    size_min = max(size_min, 0)
    size_max = min(size_max, n)
    if size_min > size_max:
        return
    if size_min == 0 and size_max == n:
        yield from range(lo, hi)
        return
    for mask in range(lo, hi):
        if size_min <= mask.bit_count() <= size_max:
            yield mask


def enumerate_subsets(
    n: int,
    size_min: int,
    size_max: int,
    visitor: Callable[[ResidueSet], object],
    *,
    ceiling: int | None = None,
) -> int:
    """Call ``visitor`` once per subset with size in range, by increasing bitmask.

    Returns the number of visits.
    """
    check_modulus(n)
    limit = exhaustive_ceiling(ceiling)
    if n > limit:
        raise ValueError(f"n={n} exceeds exhaustive ceiling {limit}")
    count = 0
    for mask in iter_masks(n, size_min, size_max):
        visitor(ResidueSet.from_mask(n, mask))
        count += 1
    return count


def shard_ranges(n: int, shards: int) -> list[tuple[int, int]]:
    """Split ``[0, 2**n)`` into at most ``shards`` contiguous disjoint ranges."""
    total = 1 << n
    shards = max(1, min(shards, total))
    step, extra = divmod(total, shards)
    out, lo = [], 0
    for i in range(shards):
        hi = lo + step + (i < extra)
        out.append((lo, hi))
        lo = hi
    return out


@dataclass(frozen=True)
class CountVector:
    """Exact nonnegative integer counts indexed by residue."""

    n: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.n:
            raise ValueError(f"length {len(self.counts)} != n={self.n}")
        if any(c < 0 for c in self.counts):
            raise ValueError("count vector entries must be nonnegative")

    @classmethod
    def from_seq(cls, n: int, values: Sequence[int]) -> "CountVector":
        return cls(n, tuple(int(v) for v in values))

    @classmethod
    def delta(cls, n: int, m: int = 0) -> "CountVector":
        counts = [0] * n
        counts[m % n] = 1
        return cls(n, tuple(counts))

    @classmethod
    def indicator(cls, A: ResidueSet) -> "CountVector":
        return cls(A.n, tuple((A.bits >> i) & 1 for i in range(A.n)))

    def __getitem__(self, m: int) -> int:
        return self.counts[m % self.n]

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    def total(self) -> int:
        return sum(self.counts)

    def support(self) -> ResidueSet:
        return ResidueSet.from_mask(self.n, sum(1 << i for i, c in enumerate(self.counts) if c))

    def scaled(self, c: int) -> "CountVector":
        return CountVector(self.n, tuple(c * v for v in self.counts))


@dataclass(frozen=True)
class Witness:
    """An instance on which a verified statement fails."""

    n: int | None
    set: ResidueSet | None
    detail: str
    context: str

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "set": None if self.set is None else self.set.literal(),
            "detail": self.detail,
        }
