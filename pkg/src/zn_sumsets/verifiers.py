"""Exhaustive and seeded-random checks of restricted-sumset statements.

Every check reduces to a per-set *slack*: a number that is ``>= 0`` when the
statement holds on that set (``>= -tolerance`` for floating point slacks) and
``None`` when the set does not satisfy the hypothesis.  The scanning engine
tallies the number of sets checked, the minimum slack with its argmin, and the
smallest violating set.  Ties always go to the smallest ``(n, bitmask)``, which
makes merged results independent of how the subset space is sharded.
"""

from __future__ import annotations

import functools
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

from . import exp_sums
from .rep_counts import rep_profile
from .sampling import SplitMix64
from .sumset import _layers, restricted_bits, unrestricted_sumset
from .zn_core import (
    ResidueSet,
    Witness,
    even_mask,
    exhaustive_ceiling,
    full_mask,
    iter_masks,
    shard_ranges,
)

SCHEMA = "zn-report/1"
PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"

Slack = float | int


def _all_sizes(n: int) -> tuple[int, int]:
    return 0, n


@dataclass(frozen=True)
class Criterion:
    """What to check on each set of Z_n."""

    verifier_id: str
    slack: Callable[[ResidueSet], Slack | None]
    detail: Callable[[ResidueSet], str]
    hypothesis: str
    sizes: Callable[[int], tuple[int, int]] = _all_sizes
    tolerance: float = 0.0
    # Restrict enumeration to subsets of this mask (e.g. the even subgroup).
    support: Callable[[int], int] | None = None
    tamper: Callable[[ResidueSet, Slack], Slack] | None = None

    def evaluate(self, A: ResidueSet) -> Slack | None:
        lo, hi = self.sizes(A.n)
        if not lo <= A.card <= hi:
            return None
        if self.support is not None and A.bits & ~self.support(A.n):
            return None
        s = self.slack(A)
        if s is not None and self.tamper is not None:
            s = self.tamper(A, s)
        return s

    def violated(self, slack: Slack) -> bool:
        return slack < -self.tolerance


@dataclass
class Tally:
    checked: int = 0
    best: tuple | None = None  # (slack, n, mask)
    witness: tuple[int, int] | None = None  # (n, mask)

    def add(self, n: int, mask: int, slack: Slack, violated: bool) -> None:
        self.checked += 1
        key = (slack, n, mask)
        if self.best is None or key < self.best:
            self.best = key
        if violated and (self.witness is None or (n, mask) < self.witness):
            self.witness = (n, mask)

    def merge(self, other: "Tally") -> "Tally":
        self.checked += other.checked
        if other.best is not None and (self.best is None or other.best < self.best):
            self.best = other.best
        if other.witness is not None and (self.witness is None or other.witness < self.witness):
            self.witness = other.witness
        return self


@dataclass
class VerificationReport:
    verifier_id: str
    params: dict
    verdict: str
    witness: Witness | None
    min_slack: Slack | None
    argmin: dict | None
    sets_checked: int
    seed: int | None
    elapsed_s: float
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict != FAIL

    def to_dict(self) -> dict:
        stats = {"min_slack": self.min_slack, "argmin": self.argmin}
        stats.update(self.extra)
        return {
            "schema": SCHEMA,
            "verifier_id": self.verifier_id,
            "params": self.params,
            "verdict": self.verdict,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "stats": stats,
            "sets_checked": self.sets_checked,
            "seed": self.seed,
            "elapsed_s": round(self.elapsed_s, 6),
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


# --- scanning engine -------------------------------------------------------


def _scatter(index_mask: int, positions: Sequence[int]) -> int:
    out = 0
    i = 0
    while index_mask:
        if index_mask & 1:
            out |= 1 << positions[i]
        index_mask >>= 1
        i += 1
    return out


def _space_bits(crit: Criterion, n: int) -> int:
    return n if crit.support is None else crit.support(n).bit_count()


def _scan(crit: Criterion, n: int, lo: int, hi: int) -> Tally:
    tally = Tally()
    smin, smax = crit.sizes(n)
    if crit.support is None:
        masks: Iterable[int] = iter_masks(n, smin, smax, lo, hi)
    else:
        support = crit.support(n)
        positions = [i for i in range(n) if support >> i & 1]
        masks = (_scatter(m, positions) for m in iter_masks(len(positions), smin, smax, lo, hi))
    for mask in masks:
        A = ResidueSet.from_mask(n, mask)
        s = crit.evaluate(A)
        if s is not None:
            tally.add(n, mask, s, crit.violated(s))
    return tally


def _scan_task(args) -> Tally:
    return _scan(*args)


def scan_exhaustive(
    crit: Criterion,
    ns: Iterable[int],
    *,
    workers: int = 1,
    ceiling: int | None = None,
) -> Tally:
    limit = exhaustive_ceiling(ceiling)
    tasks = []
    for n in ns:
        if n > limit:
            raise ValueError(f"n={n} exceeds exhaustive ceiling {limit}")
        bits = _space_bits(crit, n)
        for lo, hi in shard_ranges(bits, workers if workers > 1 else 1):
            tasks.append((crit, n, lo, hi))
    tally = Tally()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_scan_task, tasks):
                tally.merge(part)
    else:
        for task in tasks:
            tally.merge(_scan_task(task))
    return tally


def scan_random(crit: Criterion, ns: Iterable[int], samples: int, seed: int) -> Tally:
    """``samples`` sets per n, sizes uniform in ``crit.sizes(n)``, one SplitMix64 stream."""
    rng = SplitMix64(seed)
    tally = Tally()
    for n in ns:
        smin, smax = crit.sizes(n)
        smin, smax = max(smin, 0), min(smax, n)
        if smin > smax:
            continue
        for _ in range(samples):
            A = rng.subset(n, rng.between(smin, smax))
            s = crit.evaluate(A)
            if s is not None:
                tally.add(n, A.bits, s, crit.violated(s))
    return tally


def _set_ref(n: int, mask: int) -> dict:
    return {"n": n, "set": ResidueSet.from_mask(n, mask).literal()}


def build_report(
    crit: Criterion,
    tally: Tally,
    params: dict,
    *,
    seed: int | None,
    started: float,
    extra: dict | None = None,
) -> VerificationReport:
    witness = None
    if tally.witness is not None:
        n, mask = tally.witness
        A = ResidueSet.from_mask(n, mask)
        witness = Witness(n, A, crit.detail(A), crit.verifier_id)
    if tally.checked == 0:
        verdict = VACUOUS
    else:
        verdict = FAIL if witness is not None else PASS
    best = tally.best
    return VerificationReport(
        verifier_id=crit.verifier_id,
        params={**params, "hypothesis": crit.hypothesis},
        verdict=verdict,
        witness=witness,
        min_slack=None if best is None else best[0],
        argmin=None if best is None else _set_ref(best[1], best[2]),
        sets_checked=tally.checked,
        seed=seed,
        elapsed_s=time.perf_counter() - started,
        extra=extra or {},
    )


def _run(
    crit: Criterion,
    ns: Sequence[int],
    mode: str,
    *,
    samples: int = 0,
    seed: int | None = None,
    workers: int = 1,
    ceiling: int | None = None,
    params: dict | None = None,
    tamper=None,
) -> VerificationReport:
    started = time.perf_counter()
    if tamper is not None:
        crit = replace(crit, tamper=tamper)
    base = {"n_range": [min(ns), max(ns)] if ns else None, "mode": mode}
    if mode == "exhaustive":
        tally = scan_exhaustive(crit, ns, workers=workers, ceiling=ceiling)
        seed = None
    elif mode == "random":
        if seed is None:
            raise ValueError("random mode needs a seed")
        tally = scan_random(crit, ns, samples, seed)
        base["samples"] = samples
    else:
        raise ValueError(f"unknown mode {mode!r}")
    base.update(params or {})
    return build_report(crit, tally, base, seed=seed, started=started)


# --- helpers ---------------------------------------------------------------


def _missing(n: int, bits: int) -> str:
    gaps = [str(i) for i in range(n) if not bits >> i & 1]
    return ",".join(gaps) if gaps else "none"


def _hat_size(A: ResidueSet, h: int) -> int:
    return restricted_bits(A.n, A.bits, h).bit_count()


def _sizes_at_least(lo: int, n: int) -> tuple[int, int]:
    return lo, n


def _check_range(ns: Iterable[int]) -> list[int]:
    ns = sorted(set(int(n) for n in ns))
    if not ns:
        raise ValueError("empty n range")
    if ns[0] < 1:
        raise ValueError("n must be >= 1")
    return ns


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


def doubling_constant(S: ResidueSet | Iterable[int], n: int | None = None) -> int:
    """Largest number of elements of S sharing the same double."""
    if isinstance(S, ResidueSet):
        n = S.n if n is None else n
        elems = list(S)
    else:
        elems = list(S)
    if n is None:
        raise ValueError("modulus required")
    if not elems:
        raise ValueError("doubling constant of an empty set is undefined")
    counts: dict[int, int] = {}
    for s in elems:
        c = 2 * s % n
        counts[c] = counts.get(c, 0) + 1
    return max(counts.values())


# --- even n: 4^A = 5^A = Z_n when |A| >= n/2 + 3 ----------------------------


def _even_sizes(n: int) -> tuple[int, int]:
    return -(-(n + 6) // 2), n


def _even_slack(A: ResidueSet) -> int:
    layers = _layers(A.n, A.bits, 5)
    return min(layers[4].bit_count(), layers[5].bit_count()) - A.n


def _even_detail(A: ResidueSet) -> str:
    layers = _layers(A.n, A.bits, 5)
    return f"missing from 4^A: {_missing(A.n, layers[4])}; missing from 5^A: {_missing(A.n, layers[5])}"


EVEN_N = Criterion("thm-even", _even_slack, _even_detail, "|A| >= n/2 + 3 (non-strict)", _even_sizes)


def verify_even_n(ns: Iterable[int], **kw) -> VerificationReport:
    ns = _check_range(ns)
    for n in ns:
        if n % 2 or n < 6:
            raise ValueError(f"n={n}: needs even n >= 6")
    return _run(EVEN_N, ns, "exhaustive", **kw)


# --- parity split: |A_e| >= n/4 + 3, |A_o| >= 2 => 4^A = Z_n ----------------


def _parity_sizes(n: int) -> tuple[int, int]:
    return -(-(n + 12) // 4) + 2, n


def _parity_slack(A: ResidueSet) -> int | None:
    ev = even_mask(A.n)
    if 4 * (A.bits & ev).bit_count() < A.n + 12 or (A.bits & ~ev).bit_count() < 2:
        return None
    return _hat_size(A, 4) - A.n


def _parity_detail(A: ResidueSet) -> str:
    return f"missing from 4^A: {_missing(A.n, restricted_bits(A.n, A.bits, 4))}"


PARITY = Criterion(
    "thm-parity", _parity_slack, _parity_detail,
    "|A_e| >= n/4 + 3 and |A_o| >= 2 (non-strict)", _parity_sizes,
)


def verify_parity_split(ns: Iterable[int], **kw) -> VerificationReport:
    ns = _check_range(ns)
    for n in ns:
        if n % 2:
            raise ValueError(f"n={n}: needs even n")
    return _run(PARITY, ns, "exhaustive", **kw)


# --- odd n above critical density --------------------------------------------


def _full_4hat_slack(A: ResidueSet) -> int:
    return _hat_size(A, 4) - A.n


def _full_4hat_detail(A: ResidueSet) -> str:
    return f"missing from 4^A: {_missing(A.n, restricted_bits(A.n, A.bits, 4))}"


def verify_odd_density(
    alpha: float, n: int, samples: int, seed: int, *, tamper=None, **_ignored
) -> VerificationReport:
    """Random sets with ``|A| = floor(alpha n) + 1`` (strictly above alpha n) must have 4^A = Z_n."""
    started = time.perf_counter()
    a0 = exp_sums.alpha0()
    if alpha <= a0:
        raise exp_sums.BelowCriticalDensity(f"below critical density: alpha={alpha} <= alpha0={a0:.6f}")
    cutoff = exp_sums.cutoff_N(alpha)
    if n <= cutoff:
        raise ValueError(f"n below cutoff: n={n} <= N(alpha)={cutoff:.4f}")
    if n % 2 == 0:
        raise ValueError(f"n={n} must be odd")
    k = math.floor(alpha * n) + 1
    crit = Criterion(
        "thm-odd-density", _full_4hat_slack, _full_4hat_detail,
        "|A| > alpha*n (strict), n odd, n > N(alpha)",
        functools.partial(_fixed_size, k),
        tamper=tamper,
    )
    tally = scan_random(crit, [n], samples, seed)
    chain = exp_sums.positivity_chain(n, k)
    report = build_report(
        crit, tally,
        {"n_range": [n, n], "mode": "random", "samples": samples, "alpha": alpha, "k": k},
        seed=seed, started=started,
        extra={
            "alpha0": a0,
            "cutoff_N": cutoff,
            "r1_lower_bound": exp_sums.r1_lower_bound(n, k),
            "cubic_condition": exp_sums.cubic_condition(n, k),
            "chain_value": chain,
        },
    )
    if chain <= 0 and report.witness is None:
        report.verdict = FAIL
        report.witness = Witness(n, None, f"analytic chain value {chain} is not positive", crit.verifier_id)
    return report


def _fixed_size(k: int, n: int) -> tuple[int, int]:
    return k, k


# --- prime modulus lower bound: |m^A| >= min(p, m|A| - m^2 + 1) --------------


def _thmA_slack(m: int, A: ResidueSet) -> int:
    return _hat_size(A, m) - min(A.n, m * A.card - m * m + 1)


def _thmA_detail(m: int, A: ResidueSet) -> str:
    return f"|{m}^A| = {_hat_size(A, m)} < min(p, m|A| - m^2 + 1) = {min(A.n, m * A.card - m * m + 1)}"


def thmA_criterion(m: int) -> Criterion:
    return Criterion(
        "thmA", functools.partial(_thmA_slack, m), functools.partial(_thmA_detail, m),
        f"n prime, m = {m}, any A",
    )


def verify_theorem_A(m: int, ps: Iterable[int], mode: str = "exhaustive", **kw) -> VerificationReport:
    if m not in (2, 3, 4):
        raise ValueError(f"m={m} must be 2, 3 or 4")
    ps = _check_range(ps)
    for p in ps:
        if not is_prime(p):
            raise ValueError(f"n={p} is not prime")
    return _run(thmA_criterion(m), ps, mode, params={"m": m}, **kw)


# --- |A| > n/2 + 1 => 2^A = Z_n ----------------------------------------------


def _thmB_sizes(n: int) -> tuple[int, int]:
    return (n + 2) // 2 + 1, n


def _hat_full_slack(h: int, A: ResidueSet) -> int:
    return _hat_size(A, h) - A.n


def _hat_full_detail(h: int, A: ResidueSet) -> str:
    return f"missing from {h}^A: {_missing(A.n, restricted_bits(A.n, A.bits, h))}"


THM_B = Criterion(
    "thmB", functools.partial(_hat_full_slack, 2), functools.partial(_hat_full_detail, 2),
    "|A| > n/2 + 1 (strict)", _thmB_sizes,
)


def verify_theorem_B(ns: Iterable[int], mode: str = "exhaustive", **kw) -> VerificationReport:
    return _run(THM_B, _check_range(ns), mode, **kw)


# --- n >= 12, n != 15: |A| > n/2 => 3^A = Z_n --------------------------------

THM_D_EXCEPTIONS = (15,)


def _half_plus(n: int) -> tuple[int, int]:
    return n // 2 + 1, n


THM_D = Criterion(
    "thmD", functools.partial(_hat_full_slack, 3), functools.partial(_hat_full_detail, 3),
    "n >= 12, n != 15, |A| > n/2 (strict)", _half_plus,
)


def verify_theorem_D(ns: Iterable[int], mode: str = "exhaustive", **kw) -> VerificationReport:
    """Checks the statement off the exception list and hunts for a witness at n = 15."""
    started = time.perf_counter()
    ns = _check_range(ns)
    if ns[0] < 12:
        raise ValueError(f"n={ns[0]}: statement needs n >= 12")
    regular = [n for n in ns if n not in THM_D_EXCEPTIONS]
    special = [n for n in ns if n in THM_D_EXCEPTIONS]
    ceiling = kw.get("ceiling")
    exceptions = []
    for n in special:
        t = scan_exhaustive(THM_D, [n], workers=kw.get("workers", 1), ceiling=ceiling)
        found = None
        if t.witness is not None:
            wn, wmask = t.witness
            A = ResidueSet.from_mask(wn, wmask)
            found = {"n": wn, "set": A.literal(), "size": A.card, "detail": THM_D.detail(A)}
        exceptions.append({"n": n, "found": found is not None, "witness": found})
    if regular:
        report = _run(THM_D, regular, mode, **kw)
    else:
        report = build_report(THM_D, Tally(), {"n_range": [ns[0], ns[-1]], "mode": mode},
                              seed=None, started=started)
    report.params["n_range"] = [ns[0], ns[-1]]
    report.params["exceptions"] = list(THM_D_EXCEPTIONS)
    report.extra["exception_search"] = exceptions
    missing = [e["n"] for e in exceptions if not e["found"]]
    if missing:
        report.verdict = FAIL
        report.witness = Witness(missing[0], None, "expected exception not found", THM_D.verifier_id)
    elif not regular and exceptions:
        report.verdict = PASS
    report.elapsed_s = time.perf_counter() - started
    return report


# --- |2^A| >= |A| for |A| >= 3 -----------------------------------------------


def _lemma4_slack(A: ResidueSet) -> int:
    return _hat_size(A, 2) - A.card


def _lemma4_detail(A: ResidueSet) -> str:
    return f"|2^A| = {_hat_size(A, 2)} < |A| = {A.card}"


LEMMA4 = Criterion(
    "lemma4", _lemma4_slack, _lemma4_detail, "|A| >= 3",
    functools.partial(_sizes_at_least, 3),
)


def verify_lemma4(ns: Iterable[int], mode: str = "exhaustive", **kw) -> VerificationReport:
    return _run(LEMMA4, _check_range(ns), mode, **kw)


# --- |A| > (|G| + L(G))/2 => 2^A = G, for G = Z_n and G = E -------------------


def _lemma5_zn_sizes(n: int) -> tuple[int, int]:
    L = doubling_constant(ResidueSet.universe(n))
    return (n + L) // 2 + 1, n


def _lemma5_e_sizes(n: int) -> tuple[int, int]:
    E = ResidueSet.evens(n)
    return (E.card + doubling_constant(E)) // 2 + 1, E.card


def _lemma5_e_slack(A: ResidueSet) -> int:
    return _hat_size(A, 2) - A.n // 2


def _lemma5_e_detail(A: ResidueSet) -> str:
    got = restricted_bits(A.n, A.bits, 2)
    return f"2^A misses even residues: {_missing(A.n, got | ~even_mask(A.n) & full_mask(A.n))}"


LEMMA5_ZN = Criterion(
    "lemma5", functools.partial(_hat_full_slack, 2), functools.partial(_hat_full_detail, 2),
    "|A| > (|G| + L(G))/2 (strict), G = Z_n and G = E", _lemma5_zn_sizes,
)
LEMMA5_E = Criterion(
    "lemma5", _lemma5_e_slack, _lemma5_e_detail, LEMMA5_ZN.hypothesis, _lemma5_e_sizes,
    support=even_mask,
)


def verify_lemma5(ns: Iterable[int], *, workers: int = 1, ceiling: int | None = None,
                  tamper=None, **_ignored) -> VerificationReport:
    """Checks the statement in G = Z_n and, for even n, in the subgroup G = E."""
    started = time.perf_counter()
    ns = _check_range(ns)
    zn, ev = LEMMA5_ZN, LEMMA5_E
    if tamper is not None:
        zn, ev = replace(zn, tamper=tamper), replace(ev, tamper=tamper)
    even_ns = [n for n in ns if n % 2 == 0]
    t_zn = scan_exhaustive(zn, ns, workers=workers, ceiling=ceiling)
    t_ev = scan_exhaustive(ev, even_ns, workers=workers, ceiling=ceiling) if even_ns else Tally()
    constants = [{"n": n, "group": "Z_n", "L": doubling_constant(ResidueSet.universe(n))} for n in ns]
    constants += [{"n": n, "group": "E", "L": doubling_constant(ResidueSet.evens(n))} for n in even_ns]
    # a Z_n violation takes precedence over one inside E
    if t_zn.witness is None and t_ev.witness is not None:
        crit, tally = ev, _prefer(t_ev, t_zn)
    else:
        crit, tally = zn, _prefer(t_zn, t_ev)
    return build_report(
        crit, tally, {"n_range": [ns[0], ns[-1]], "mode": "exhaustive"},
        seed=None, started=started, extra={"doubling_constants": constants},
    )


def _prefer(primary: Tally, other: Tally) -> Tally:
    """Merge keeping ``primary``'s witness."""
    merged = Tally().merge(primary).merge(other)
    merged.witness = primary.witness
    return merged


# --- doubling constant of the even subgroup -----------------------------------


def expected_L_even(n: int) -> int:
    return 2 if n % 4 == 0 else 1


def verify_lemma6(ns: Iterable[int], *, tamper=None, **_ignored) -> VerificationReport:
    started = time.perf_counter()
    ns = [n for n in _check_range(ns) if n % 2 == 0]
    tally = Tally()
    witness = None
    for n in ns:
        E = ResidueSet.evens(n)
        got = doubling_constant(E)
        slack = 0 if got == expected_L_even(n) else -1
        if tamper is not None:
            slack = tamper(E, slack)
        tally.add(n, E.bits, slack, slack < 0)
        if slack < 0 and witness is None:
            witness = Witness(n, E, f"L(E) = {got}, expected {expected_L_even(n)}", "lemma6")
    report = VerificationReport(
        verifier_id="lemma6",
        params={"n_range": [ns[0], ns[-1]] if ns else None, "mode": "exhaustive",
                "hypothesis": "n even; L(E) = 2 if 4 | n else 1"},
        verdict=VACUOUS if not ns else (FAIL if witness else PASS),
        witness=witness,
        min_slack=None if tally.best is None else tally.best[0],
        argmin=None if tally.best is None else {"n": tally.best[1], "set": "E"},
        sets_checked=tally.checked,
        seed=None,
        elapsed_s=time.perf_counter() - started,
    )
    return report


# --- |3^A| >= |A| - 2 ---------------------------------------------------------


def _factI_slack(A: ResidueSet) -> int:
    return _hat_size(A, 3) - (A.card - 2)


def _factI_detail(A: ResidueSet) -> str:
    return f"|3^A| = {_hat_size(A, 3)} < |A| - 2 = {A.card - 2}"


FACT_I = Criterion("factI", _factI_slack, _factI_detail, "any A", _all_sizes)


def verify_factI(ns: Iterable[int], mode: str = "exhaustive", **kw) -> VerificationReport:
    return _run(FACT_I, _check_range(ns), mode, **kw)


# --- open question: |3^A| >= |A| for |A| >= 4 ---------------------------------


def _p1_slack(A: ResidueSet) -> int:
    return _hat_size(A, 3) - A.card


def _p1_detail(A: ResidueSet) -> str:
    return f"COUNTEREXAMPLE: |3^A| = {_hat_size(A, 3)} < |A| = {A.card}"


PROBLEM1 = Criterion(
    "problem1", _p1_slack, _p1_detail, "|A| >= 4",
    functools.partial(_sizes_at_least, 4),
)


def search_problem1(
    ns: Iterable[int], mode: str = "exhaustive", samples: int = 0, seed: int | None = None, **kw
) -> VerificationReport:
    """Search for A with ``|3^A| < |A|``. A ``fail`` verdict is a counterexample."""
    return _run(PROBLEM1, _check_range(ns), mode, samples=samples, seed=seed, **kw)


# --- extremal sets for 2^A: |A| = floor(n/2)+1, |2^A| = n-2 -------------------


class SetupViolation(RuntimeError):
    pass


def element_order(x: int, n: int) -> int:
    return n // math.gcd(x % n, n)


def _extremal_info(A: ResidueSet) -> tuple[int, int, int] | None:
    """``(2a, 2b, d)`` for an extremal set, ``None`` if A is not extremal."""
    n = A.n
    hat = restricted_bits(n, A.bits, 2)
    if A.card != n // 2 + 1 or hat.bit_count() != n - 2:
        return None
    gap = unrestricted_sumset(A, 2).bits & ~hat
    doubles = [i for i in range(n) if gap >> i & 1]
    if len(doubles) != 2:
        raise SetupViolation(f"|2A \\ 2^A| = {len(doubles)} != 2 for A={{{A.literal()}}} in Z_{n}")
    two_a, two_b = doubles
    a = next(x for x in A if 2 * x % n == two_a)
    b = next(x for x in A if 2 * x % n == two_b)
    return two_a, two_b, element_order(2 * (b - a), n)


def enumerate_extremal_2hat(n: int, *, guard: int = 20) -> list[tuple[ResidueSet, int]]:
    """All extremal sets with the order d of 2(b - a); asserts d > 1 and d odd."""
    if n > guard:
        raise ValueError(f"n={n} exceeds enumeration guard {guard}")
    out = []
    k = n // 2 + 1
    for mask in iter_masks(n, k, k):
        A = ResidueSet.from_mask(n, mask)
        info = _extremal_info(A)
        if info is None:
            continue
        d = info[2]
        if d <= 1 or d % 2 == 0:
            raise AssertionError(f"d={d} is not odd and > 1 for A={{{A.literal()}}} in Z_{n}")
        out.append((A, d))
    return out


def _thmC_sizes(n: int) -> tuple[int, int]:
    return n // 2 + 1, n // 2 + 1


def _thmC_slack(A: ResidueSet) -> int | None:
    info = _extremal_info(A)
    if info is None:
        return None
    d = info[2]
    return 0 if d > 1 and d % 2 == 1 else -1


def _thmC_detail(A: ResidueSet) -> str:
    info = _extremal_info(A)
    return f"2a={info[0]}, 2b={info[1]}, d={info[2]}" if info else "not extremal"


THM_C = Criterion(
    "thmC-d-odd", _thmC_slack, _thmC_detail,
    "|A| = floor(n/2) + 1 and |2^A| = n - 2", _thmC_sizes,
)


def verify_theorem_C(ns: Iterable[int], **kw) -> VerificationReport:
    ns = _check_range(ns)
    if ns[-1] > 20:
        raise ValueError(f"n={ns[-1]} exceeds enumeration guard 20")
    return _run(THM_C, ns, "exhaustive", **kw)


# --- trigonometric maximum over the cube --------------------------------------


def verify_lemma1(ds: Iterable[int] = (3, 5, 7, 9, 11, 13), xs: Iterable[float] = (1.0, 2.5),
                  *, tamper=None, **_ignored) -> VerificationReport:
    started = time.perf_counter()
    ds = [d for d in sorted(set(ds)) if d >= 3 and d % 2]
    xs = sorted(set(float(x) for x in xs))
    best = None
    witness = None
    checked = 0
    for d in ds:
        for X in xs:
            formula = exp_sums.lemma1_max(d, X)
            brute = exp_sums.lemma1_vertex_bruteforce(d, X)
            slack = exp_sums.ABS_TOL - abs(brute - formula)
            if tamper is not None:
                slack = tamper((d, X), slack)
            checked += 1
            if best is None or (slack, d, X) < best:
                best = (slack, d, X)
            if slack < 0 and witness is None:
                witness = Witness(None, None, f"d={d}, X={X}: brute force {brute!r} vs formula {formula!r}", "lemma1")
    return VerificationReport(
        verifier_id="lemma1",
        params={"d_values": ds, "x_values": xs, "mode": "exhaustive",
                "hypothesis": "d odd, d >= 3, X > 0"},
        verdict=VACUOUS if not checked else (FAIL if witness else PASS),
        witness=witness,
        min_slack=None if best is None else best[0],
        argmin=None if best is None else {"d": best[1], "X": best[2]},
        sets_checked=checked,
        seed=None,
        elapsed_s=time.perf_counter() - started,
    )


# --- four-element representation identity ------------------------------------


def _lemma2_slack(A: ResidueSet) -> int:
    return -max((abs(r) for r in rep_profile(A).residual()), default=0)


def _lemma2_detail(A: ResidueSet) -> str:
    res = rep_profile(A).residual()
    m = max(range(A.n), key=lambda i: abs(res[i]))
    return f"R({m}) - 24*C4({m}) = {res[m]}"


LEMMA2 = Criterion("lemma2", _lemma2_slack, _lemma2_detail, "any A", _all_sizes)


def verify_lemma2(ns: Iterable[int], mode: str = "exhaustive", **kw) -> VerificationReport:
    return _run(LEMMA2, _check_range(ns), mode, **kw)


# --- |S(h/n)| <= n/3 for n not dividing h ---------------------------------------


def _lemma20_slack(A: ResidueSet) -> float | None:
    if A.n < 2:
        return None
    return A.n / 3 - exp_sums.spectrum_max_offdc(A)


def _lemma20_detail(A: ResidueSet) -> str:
    mags = exp_sums.spectrum(A).magnitudes()
    h = int(mags[1:].argmax()) + 1
    return f"|S({h}/{A.n})| = {mags[h]:.12g} > n/3 = {A.n / 3:.12g}"


LEMMA20 = Criterion(
    "lemma20", _lemma20_slack, _lemma20_detail, "n >= 2, 1 <= h <= n-1",
    _all_sizes, tolerance=exp_sums.ABS_TOL,
)


def verify_lemma20(ns: Iterable[int], mode: str = "exhaustive", **kw) -> VerificationReport:
    return _run(LEMMA20, _check_range(ns), mode, **kw)


# --- Parseval ------------------------------------------------------------------

PARSEVAL_RTOL = 1e-6


def _parseval_slack(A: ResidueSet) -> float:
    target = A.n * A.card
    err = abs(exp_sums.spectrum(A).parseval_sum() - target) / max(target, 1)
    return PARSEVAL_RTOL - err


def _parseval_detail(A: ResidueSet) -> str:
    return f"sum |S|^2 = {exp_sums.spectrum(A).parseval_sum()!r}, n|A| = {A.n * A.card}"


PARSEVAL = Criterion("parseval", _parseval_slack, _parseval_detail, "any A", _all_sizes)


def verify_parseval(ns: Iterable[int], mode: str = "random", **kw) -> VerificationReport:
    return _run(PARSEVAL, _check_range(ns), mode, **kw)


# --- re-checking witnesses ------------------------------------------------------


def criterion_for(verifier_id: str, **params) -> Criterion:
    fixed = {
        "thm-even": EVEN_N, "thm-parity": PARITY, "thmB": THM_B, "thmD": THM_D,
        "lemma4": LEMMA4, "factI": FACT_I, "problem1": PROBLEM1, "thmC-d-odd": THM_C,
        "lemma2": LEMMA2, "lemma20": LEMMA20, "parseval": PARSEVAL,
    }
    if verifier_id in fixed:
        return fixed[verifier_id]
    if verifier_id == "thmA":
        return thmA_criterion(int(params["m"]))
    if verifier_id == "thm-odd-density":
        return Criterion(verifier_id, _full_4hat_slack, _full_4hat_detail, "|A| > alpha*n")
    raise KeyError(f"no per-set criterion for {verifier_id!r}")


def recheck(witness: Witness, **params) -> bool:
    """True when the witness still violates the statement it was reported against."""
    if witness.set is None:
        raise ValueError("witness carries no set")
    if witness.context == "lemma5":
        crits = [LEMMA5_ZN, LEMMA5_E]
    else:
        crits = [criterion_for(witness.context, **params)]
    for crit in crits:
        s = crit.evaluate(witness.set)
        if s is not None and crit.violated(s):
            return True
    return False
