"""Exact representation counts for sums of four elements.

For a set A of size k and a target m the module computes

* R1(m): ordered quadruples (a1, a2, a3, a4) in A^4 with a1 + a2 + a3 + a4 = m,
* R2(m): ordered triples (a1, a2, a3) with a1 + a2 + 2*a3 = m,
* R3(m): ordered pairs (a1, a2) with 2*a1 + 2*a2 = m,
* R4(m): ordered pairs (a1, a2) with a1 + 3*a2 = m,
* R5(m): elements a with 4*a = m,

and combines them as R = R1 - 6 R2 + 3 R3 + 8 R4 - 6 R5, which counts ordered
quadruples of pairwise distinct elements.  The independent check is the
subset-sum DP :func:`distinct_subset_counts`, with R = 24 * C4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .zn_core import CountVector, ResidueSet

INT64_MAX = (1 << 63) - 1
MAX_SUBSET_H = 8

#: Weights of R1..R5 in the inclusion-exclusion identity.
IDENTITY_WEIGHTS = (1, -6, 3, 8, -6)


class IdentityViolation(RuntimeError):
    """The signed combination produced a negative count. Indicates a bug."""


def pushforward(A: ResidueSet, c: int) -> CountVector:
    """Multiplicities of the map a -> c*a on A."""
    if c < 1:
        raise ValueError("c must be >= 1")
    n = A.n
    counts = [0] * n
    for a in A:
        counts[c * a % n] += 1
    return CountVector(n, tuple(counts))


def _convolve_py(u: tuple[int, ...], v: tuple[int, ...], n: int) -> list[int]:
    w = [0] * n
    nz = [(j, y) for j, y in enumerate(v) if y]
    for i, x in enumerate(u):
        if x:
            for j, y in nz:
                w[(i + j) % n] += x * y
    return w


def cyclic_convolve(u: CountVector, v: CountVector) -> CountVector:
    """Exact cyclic convolution ``w(m) = sum_{i+j=m} u(i) v(j)``.

    Uses int64 numpy when every output entry is provably below 2**63 and
    falls back to Python integers otherwise.  No floating point is involved.
    """
    if u.n != v.n:
        raise ValueError(f"modulus mismatch: {u.n} vs {v.n}")
    n = u.n
    bound = min(u.total() * max(v.counts, default=0), v.total() * max(u.counts, default=0))
    if bound > INT64_MAX:
        return CountVector(n, tuple(_convolve_py(u.counts, v.counts, n)))
    a = np.asarray(u.counts, dtype=np.int64)
    b = np.asarray(v.counts, dtype=np.int64)
    ia, ib = np.flatnonzero(a), np.flatnonzero(b)
    if ia.size * ib.size < n * n // 4:
        # sparse operands (indicator vectors of small sets in large n)
        w = np.zeros(n, dtype=np.int64)
        np.add.at(w, (ia[:, None] + ib[None, :]) % n, np.outer(a[ia], b[ib]))
    else:
        full = np.convolve(a, b)
        w = full[:n].copy()
        w[: n - 1] += full[n:]
    return CountVector(n, tuple(w.tolist()))


def distinct_subset_counts(A: ResidueSet, h: int) -> CountVector:
    """``C_h(m)``: number of h-element subsets of A whose sum is m (mod n)."""
    if not 0 <= h <= MAX_SUBSET_H:
        raise ValueError(f"h={h} outside [0, {MAX_SUBSET_H}]")
    n = A.n
    dtype = np.int64 if math.comb(A.card, h) <= INT64_MAX else object
    table = np.zeros((h + 1, n), dtype=dtype)
    table[0, 0] = 1
    used = 0
    for a in A:
        used += 1
        for j in range(min(h, used), 0, -1):
            table[j] += np.roll(table[j - 1], a)
    return CountVector(n, tuple(int(x) for x in table[h]))


@dataclass(frozen=True)
class RepProfile:
    n: int
    R: CountVector
    R1: CountVector
    R2: CountVector
    R3: CountVector
    R4: CountVector
    R5: CountVector
    C4: CountVector

    def components(self) -> tuple[CountVector, ...]:
        return (self.R1, self.R2, self.R3, self.R4, self.R5)

    def residual(self) -> tuple[int, ...]:
        """``R(m) - 24*C4(m)`` for every m; all zeros when the identity holds."""
        return tuple(r - 24 * c for r, c in zip(self.R, self.C4))


def signed_combination(components) -> list[int]:
    return [sum(w * vec[m] for w, vec in zip(IDENTITY_WEIGHTS, components))
            for m in range(len(components[0]))]


def rep_profile(A: ResidueSet) -> RepProfile:
    f = CountVector.indicator(A)
    g2, g3, g4 = (pushforward(A, c) for c in (2, 3, 4))
    ff = cyclic_convolve(f, f)
    r1 = cyclic_convolve(ff, ff)
    r2 = cyclic_convolve(ff, g2)
    r3 = cyclic_convolve(g2, g2)
    r4 = cyclic_convolve(f, g3)
    r5 = g4
    combo = signed_combination((r1, r2, r3, r4, r5))
    bad = [m for m, x in enumerate(combo) if x < 0]
    if bad:
        raise IdentityViolation(
            f"representation identity violated for A={{{A.literal()}}} in Z_{A.n}: R({bad[0]}) = {combo[bad[0]]}"
        )
    return RepProfile(
        n=A.n,
        R=CountVector(A.n, tuple(combo)),
        R1=r1, R2=r2, R3=r3, R4=r4, R5=r5,
        C4=distinct_subset_counts(A, 4),
    )


def r1_counts(A: ResidueSet) -> CountVector:
    f = CountVector.indicator(A)
    ff = cyclic_convolve(f, f)
    return cyclic_convolve(ff, ff)


def min_R1(A: ResidueSet) -> tuple[int, int]:
    """``(m, R1(m))`` minimizing R1; smallest m on ties."""
    counts = r1_counts(A).counts
    value = min(counts)
    return counts.index(value), value
