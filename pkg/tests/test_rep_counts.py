import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zn_sumsets.rep_counts import (
    IdentityViolation,
    cyclic_convolve,
    distinct_subset_counts,
    min_R1,
    pushforward,
    rep_profile,
    signed_combination,
)
from zn_sumsets.sampling import SplitMix64
from zn_sumsets.zn_core import CountVector, ResidueSet

from .test_zn_core import residue_sets


def rs(n, *xs):
    return ResidueSet(n, xs)


def brute_profile(A):
    """Every count by direct tuple enumeration."""
    n = A.n
    el = A.elements()
    R = [0] * n
    R1 = [0] * n
    R2 = [0] * n
    R3 = [0] * n
    R4 = [0] * n
    R5 = [0] * n
    for t in itertools.product(el, repeat=4):
        m = sum(t) % n
        R1[m] += 1
        if len(set(t)) == 4:
            R[m] += 1
    for a1, a2, a3 in itertools.product(el, repeat=3):
        R2[(a1 + a2 + 2 * a3) % n] += 1
    for a1, a2 in itertools.product(el, repeat=2):
        R3[(2 * a1 + 2 * a2) % n] += 1
        R4[(a1 + 3 * a2) % n] += 1
    for a in el:
        R5[4 * a % n] += 1
    return R, R1, R2, R3, R4, R5


def brute_subset_counts(A, h):
    out = [0] * A.n
    for c in itertools.combinations(A.elements(), h):
        out[sum(c) % A.n] += 1
    return out


class TestPushforward:
    def test_doubling_evens(self):
        assert pushforward(rs(8, 0, 2, 4, 6), 2).counts == (2, 0, 0, 0, 2, 0, 0, 0)

    def test_identity(self):
        A = rs(9, 1, 4, 5)
        assert pushforward(A, 1) == CountVector.indicator(A)

    def test_times_four(self):
        assert pushforward(rs(5, 1, 2), 4).counts == (0, 0, 0, 1, 1)

    def test_bad_c(self):
        with pytest.raises(ValueError):
            pushforward(rs(5, 1), 0)


class TestConvolve:
    def test_binomial_square(self):
        f = CountVector.indicator(rs(4, 0, 1))
        assert cyclic_convolve(f, f).counts == (1, 2, 1, 0)

    def test_delta_identity(self):
        v = CountVector(5, (3, 0, 7, 1, 2))
        assert cyclic_convolve(CountVector.delta(5), v) == v

    def test_inverse_pair(self):
        n = 11
        u = CountVector.indicator(rs(n, 1))
        v = CountVector.indicator(rs(n, n - 1))
        assert cyclic_convolve(u, v) == CountVector.delta(n)

    def test_big_counts_stay_exact(self):
        big = 3**45  # products overflow int64
        u = CountVector(3, (big, 1, 0))
        v = CountVector(3, (big, 0, 2))
        # (big + x)(big + 2x^2) = big^2 + big x + 2 big x^2 + 2 x^3, and x^3 = 1
        assert cyclic_convolve(u, v).counts == (big * big + 2, big, 2 * big)

    def test_sparse_and_dense_paths_agree(self):
        rng = SplitMix64(11)
        for n in (50, 64, 97):
            for k in (2, 5, n // 2, n):
                f = CountVector.indicator(rng.subset(n, k))
                g = CountVector(n, tuple(rng.bounded(4) for _ in range(n)))
                expected = [0] * n
                for i, j in itertools.product(range(n), repeat=2):
                    expected[(i + j) % n] += f[i] * g[j]
                assert list(cyclic_convolve(f, g).counts) == expected
                assert list(cyclic_convolve(f, f).counts) == [
                    sum(f[i] * f[(m - i) % n] for i in range(n)) for m in range(n)
                ]

    def test_modulus_mismatch(self):
        with pytest.raises(ValueError):
            cyclic_convolve(CountVector.delta(3), CountVector.delta(4))

    @given(st.integers(1, 12), st.data())
    def test_commutative_associative(self, n, data):
        vec = st.lists(st.integers(0, 50), min_size=n, max_size=n).map(lambda c: CountVector(n, tuple(c)))
        u, v, w = data.draw(vec), data.draw(vec), data.draw(vec)
        assert cyclic_convolve(u, v) == cyclic_convolve(v, u)
        assert cyclic_convolve(cyclic_convolve(u, v), w) == cyclic_convolve(u, cyclic_convolve(v, w))

    @given(st.integers(1, 12), st.data())
    def test_matches_schoolbook(self, n, data):
        vec = st.lists(st.integers(0, 9), min_size=n, max_size=n)
        a, b = data.draw(vec), data.draw(vec)
        expected = [0] * n
        for i, j in itertools.product(range(n), repeat=2):
            expected[(i + j) % n] += a[i] * b[j]
        assert cyclic_convolve(CountVector(n, tuple(a)), CountVector(n, tuple(b))).counts == tuple(expected)


class TestDistinctSubsetCounts:
    def test_pairs(self):
        assert distinct_subset_counts(rs(6, 0, 1, 2), 2).counts == (0, 1, 1, 1, 0, 0)

    def test_h0(self):
        assert distinct_subset_counts(rs(6, 2, 3), 0) == CountVector.delta(6)

    def test_guard(self):
        with pytest.raises(ValueError):
            distinct_subset_counts(rs(6, 1), 9)

    def test_binomial_totals_z10(self):
        for mask in range(1 << 10):
            A = ResidueSet.from_mask(10, mask)
            for h in range(5):
                assert distinct_subset_counts(A, h).total() == math.comb(A.card, h)

    @given(residue_sets(max_n=14), st.integers(0, 6))
    def test_matches_combinations(self, A, h):
        assert list(distinct_subset_counts(A, h).counts) == brute_subset_counts(A, h)

    def test_object_dtype_path(self):
        A = ResidueSet.universe(200)
        c = distinct_subset_counts(A, 8)
        assert c.total() == math.comb(200, 8)


class TestRepProfile:
    def test_z7_example(self):
        prof = rep_profile(rs(7, 0, 1, 2, 3))
        assert prof.C4[6] == 1 and prof.R[6] == 24
        brute = brute_profile(rs(7, 0, 1, 2, 3))
        assert (prof.R1[6], prof.R2[6], prof.R3[6], prof.R4[6], prof.R5[6]) == tuple(b[6] for b in brute[1:])
        # frozen from the tuple enumeration above
        assert (prof.R1[6], prof.R2[6], prof.R3[6], prof.R4[6], prof.R5[6]) == (44, 8, 4, 2, 0)

    def test_full_z4(self):
        prof = rep_profile(ResidueSet.universe(4))
        assert prof.C4[2] == 1 and prof.R[2] == 24 and prof.C4.total() == 1

    @pytest.mark.parametrize("A", [(), (0,), (1, 2), (0, 5, 9)])
    def test_small_sets_have_no_distinct_quadruples(self, A):
        assert rep_profile(rs(11, *A)).R.total() == 0

    # Contribution table of the inclusion-exclusion proof.  Elements are spaced
    # as decimal digits in Z_100000 so each 4-multiset has a unique sum.
    N = 100000

    def _at(self, A, m):
        p = rep_profile(ResidueSet(self.N, A))
        return tuple(v[m] for v in (p.R, p.R1, p.R2, p.R3, p.R4, p.R5))

    def test_case_all_distinct(self):
        assert self._at((1, 10, 100, 1000), 1111) == (24, 24, 0, 0, 0, 0)

    def test_case_one_repeat(self):
        assert self._at((1, 10, 100), 1 + 10 + 200) == (0, 12, 2, 0, 0, 0)

    def test_case_two_pairs(self):
        assert self._at((1, 10), 22) == (0, 6, 2, 2, 0, 0)

    def test_case_triple(self):
        assert self._at((1, 10), 31) == (0, 4, 2, 0, 1, 0)

    def test_case_quadruple(self):
        assert self._at((1,), 4) == (0, 1, 1, 1, 1, 1)
        # n = 5, A = {1}, m = 4: 1 - 6 + 3 + 8 - 6 = 0
        assert self._at_small() == (0, 1, 1, 1, 1, 1)

    def _at_small(self):
        p = rep_profile(rs(5, 1))
        return tuple(v[4] for v in (p.R, p.R1, p.R2, p.R3, p.R4, p.R5))

    @settings(max_examples=60)
    @given(residue_sets(max_n=13))
    def test_against_brute_force(self, A):
        prof = rep_profile(A)
        brute = brute_profile(A)
        assert [list(v.counts) for v in (prof.R, *prof.components())] == [list(b) for b in brute]
        assert all(r == 0 for r in prof.residual())

    @given(residue_sets(max_n=30))
    def test_mass_identities(self, A):
        k = A.card
        prof = rep_profile(A)
        totals = [v.total() for v in prof.components()]
        assert totals == [k**4, k**3, k**2, k**2, k]
        assert prof.C4.total() == math.comb(k, 4)
        assert prof.R.total() == 24 * math.comb(k, 4)

    @given(residue_sets(max_n=30))
    def test_support_is_four_hat(self, A):
        from zn_sumsets.sumset import restricted_sumset

        assert rep_profile(A).R.support() == restricted_sumset(A, 4)

    def test_tripwire(self, monkeypatch):
        import zn_sumsets.rep_counts as rc

        monkeypatch.setattr(rc, "IDENTITY_WEIGHTS", (1, -7, 3, 8, -6))
        with pytest.raises(IdentityViolation):
            rc.rep_profile(rs(7, 0, 1, 2))

    def test_signed_combination_weights(self):
        vecs = [CountVector.delta(3, 0)] * 5
        assert signed_combination(vecs) == [1 - 6 + 3 + 8 - 6, 0, 0]


class TestMinR1:
    def test_full_group(self):
        assert min_R1(ResidueSet.universe(5)) == (0, 125)

    def test_two_point(self):
        # R1(0) = R1(3) = 8 from the 16 tuples over {0,3}; other residues are unreachable
        brute = brute_profile(rs(6, 0, 3))[1]
        assert brute == [8, 0, 0, 8, 0, 0]
        assert min_R1(rs(6, 0, 3)) == (1, 0)

    def test_empty(self):
        assert min_R1(ResidueSet.empty(9)) == (0, 0)

    def test_random_sets_against_brute(self):
        rng = SplitMix64(3)
        for _ in range(20):
            A = rng.subset(9, rng.between(0, 9))
            r1 = brute_profile(A)[1]
            assert min_R1(A) == (r1.index(min(r1)), min(r1))
