"""Exponential sums over residue sets and the density constants built on them.

``S(u) = sum_{a in A} e(u a)`` with ``e(x) = exp(2 pi i x)``.  Phases are
reduced exactly as ``(h*a mod n)/n`` before scaling by 2 pi.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .zn_core import ResidueSet

ABS_TOL = 1e-9
ROOT_TOL = 1e-12
VERTEX_GUARD = 21


class BelowCriticalDensity(ValueError):
    pass


@dataclass(frozen=True)
class Spectrum:
    n: int
    values: np.ndarray

    def __getitem__(self, h: int) -> complex:
        return complex(self.values[h % self.n])

    def magnitudes(self) -> np.ndarray:
        return np.abs(self.values)

    def parseval_sum(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))


@functools.lru_cache(maxsize=64)
def character_table(n: int) -> np.ndarray:
    """``T[h, x] = e(h x / n)``; read-only, cached per modulus."""
    h = np.arange(n, dtype=np.int64)
    table = np.exp(2j * np.pi * ((np.outer(h, h) % n) / n))
    table.setflags(write=False)
    return table


def spectrum(A: ResidueSet) -> Spectrum:
    n = A.n
    if not A.card:
        return Spectrum(n, np.zeros(n, dtype=complex))
    elems = np.fromiter(A, dtype=np.int64, count=A.card)
    if n <= 2048:
        values = character_table(n)[:, elems].sum(axis=1)
    else:
        phases = (np.outer(np.arange(n, dtype=np.int64), elems) % n) / n
        values = np.exp(2j * np.pi * phases).sum(axis=1)
    return Spectrum(n, values)


def spectrum_max_offdc(A: ResidueSet) -> float:
    """Largest ``|S(h/n)|`` over ``h = 1..n-1``."""
    if A.n < 2:
        raise ValueError("need n >= 2")
    return float(spectrum(A).magnitudes()[1:].max())


def lemma1_max(d: int, X: float) -> float:
    """Maximum of ``|sum_j x_j e(j/d)|`` over the cube ``[0, X]^d`` for odd d >= 3."""
    if d < 3 or d % 2 == 0:
        raise ValueError(f"d={d} must be odd and >= 3")
    if not X > 0:
        raise ValueError("X must be positive")
    return X / (2.0 * math.sin(math.pi / (2 * d)))


def lemma1_vertex_bruteforce(d: int, X: float) -> float:
    """Same maximum by enumerating the cube's 2**d vertices.

    ``|T|`` is convex in ``x``, so the maximum sits at a vertex.
    """
    if d < 1 or d > VERTEX_GUARD:
        raise ValueError(f"d={d} outside [1, {VERTEX_GUARD}]")
    roots = np.exp(2j * np.pi * (np.arange(1, d + 1) % d) / d)
    best = 0.0
    chunk = 1 << min(d, 16)
    for start in range(0, 1 << d, chunk):
        masks = np.arange(start, start + chunk, dtype=np.int64)[:, None]
        bits = (masks >> np.arange(d, dtype=np.int64)) & 1
        best = max(best, float(np.abs(bits @ roots).max()))
    return X * best


def _bisect_root(f, lo: float, hi: float) -> float:
    flo = f(lo)
    if flo * f(hi) > 0:
        raise ValueError("root not bracketed")
    while True:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            return mid
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid


def density_cubic(alpha: float) -> float:
    return 9 * alpha**3 + alpha - 1


def alpha0_cardano() -> float:
    r = math.sqrt(741)
    return float(np.cbrt((27 + r) / 486) + np.cbrt((27 - r) / 486))


def alpha0_bisection() -> float:
    return _bisect_root(density_cubic, 0.0, 1.0)


def alpha0() -> float:
    """Real root of ``9x^3 + x - 1``, by bisection, cross-checked against Cardano."""
    root = alpha0_bisection()
    closed = alpha0_cardano()
    if abs(root - closed) > ABS_TOL:
        raise ArithmeticError(f"Cardano value {closed!r} disagrees with bisection root {root!r}")
    return root


def cutoff_N(alpha: float) -> float:
    """``54 / (9 alpha^3 + alpha - 1)``; beyond this n, density alpha forces 4^A = Z_n (n odd)."""
    if alpha <= alpha0():
        raise BelowCriticalDensity(f"below critical density: alpha={alpha} <= alpha0")
    return 54.0 / density_cubic(alpha)


def r1_lower_bound(n: int, k: int) -> float:
    """``k^4/n - (n/3)^2 (k - k^2/n)``, a floor for every R1(m) when |A| = k and n is odd."""
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside [0, {n}]")
    return k**4 / n - (n / 3) ** 2 * (k - k * k / n)


def cubic_condition(n: int, k: int) -> float:
    return k**3 / n - n * n / 9 + k * n / 9 - 6 * k


def positivity_chain(n: int, k: int) -> float:
    """The final lower bound on R(m): ``r1_lower_bound - 6k(k-1) - 6k``."""
    return r1_lower_bound(n, k) - 6 * k * (k - 1) - 6 * k
