"""Discriminant-search methods A, A*, B, B*, C, D and the seeded method R."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bpsw.arith import is_perfect_square, jacobi
from bpsw.certificates import KIND_PERFECT_SQUARE, KIND_ZERO_JACOBI
from bpsw.params import (
    METHOD_NAMES,
    SEARCH_CAP,
    SQUARE_CHECK_AFTER,
    mix64,
    select_params,
    splitmix64,
    stream_key,
)

odd_composite = st.integers(min_value=9, max_value=10**7).filter(
    lambda n: n % 2 == 1 and any(n % p == 0 for p in (3, 5, 7, 11, 13))
)
odd_n = st.integers(min_value=3, max_value=10**9).filter(lambda n: n % 2 == 1)


class TestSharedContract:
    @given(odd_n, st.sampled_from(METHOD_NAMES))
    def test_outcome_is_valid_selection_or_certificate(self, n, method):
        out = select_params(n, method)
        if out.ok:
            lp = out.params
            assert lp.d == lp.p * lp.p - 4 * lp.q
            assert jacobi(lp.d, n) == -1
            assert 1 <= lp.p
            from math import gcd

            assert gcd(lp.q, n) == 1
            assert lp.source == method
        elif out.is_composite:
            ev = out.certificate.evidence
            if out.certificate.kind == KIND_ZERO_JACOBI:
                assert 1 < ev["factor"] < n and n % ev["factor"] == 0
            else:
                assert out.certificate.kind == KIND_PERFECT_SQUARE
                assert ev["root"] ** 2 == n
        else:
            assert out.exhausted

    def test_methods_reject_even_or_tiny(self):
        for method in METHOD_NAMES:
            with pytest.raises(ValueError):
                select_params(8, method)
            with pytest.raises(ValueError):
                select_params(1, method)

    @given(st.integers(min_value=33, max_value=10**6).filter(lambda n: n % 2 == 1))
    def test_perfect_squares_are_always_certified(self, m):
        n = m * m
        for method in METHOD_NAMES:
            out = select_params(n, method)
            assert out.is_composite
            if out.certificate.kind == KIND_PERFECT_SQUARE:
                assert out.certificate.evidence["root"] == m
            else:
                # a zero Jacobi symbol may legitimately fire first
                assert out.certificate.kind == KIND_ZERO_JACOBI


class TestMethodA:
    def test_alternating_discriminants(self):
        # 323: jacobi(5, 323) = -1 on the first try
        out = select_params(323, "A")
        assert (out.params.d, out.params.p, out.params.q) == (5, 1, -1)

    def test_q_is_exact_division(self):
        # 11 rejects D = 5, -7, 9, skips -11, lands on D = 13
        out = select_params(11, "A")
        lp = out.params
        assert (lp.d, lp.p, lp.q) == (13, 1, -3)
        assert lp.d % 4 == 1  # every candidate is 1 mod 4, so (1-D)/4 is exact

    def test_zero_jacobi_gives_factor(self):
        # 21 accepts neither D=5 (jacobi +1) nor D=-7 (jacobi 0, proper gcd)
        out = select_params(21, "A")
        assert out.is_composite
        assert out.certificate.kind == KIND_ZERO_JACOBI
        ev = out.certificate.evidence
        assert ev["factor"] == 7 and ev["d"] == -7 and ev["via"] == "gcd(D,n)"

    def test_own_multiple_is_skipped_not_certified(self):
        # jacobi(D, n) = 0 with n | D carries no factor: D=-11 at n=11 is
        # skipped and the search continues to D=13
        out = select_params(11, "A")
        assert out.ok and out.params.d == 13


class TestMethodAStar:
    def test_rewrites_q_minus_one_to_five_five(self):
        out = select_params(323, "A*")
        assert (out.params.d, out.params.p, out.params.q) == (5, 5, 5)

    def test_differs_from_a_only_at_d_five(self):
        for n in (323, 913, 1159, 3827, 10877):
            a = select_params(n, "A")
            a_star = select_params(n, "A*")
            if a.ok and a.params.d == 5:
                assert (a_star.params.p, a_star.params.q) == (5, 5)
            elif a.ok:
                assert (a.params.p, a.params.q) == (a_star.params.p, a_star.params.q)


class TestMethodB:
    def test_worked_example(self):
        out = select_params(64469, "B")
        assert (out.params.d, out.params.p, out.params.q) == (13, 5, 3)

    @given(odd_n)
    def test_p_is_smallest_odd_exceeding_sqrt_d(self, n):
        out = select_params(n, "B")
        if not out.ok:
            return
        lp = out.params
        assert lp.p % 2 == 1
        assert lp.p * lp.p > lp.d
        assert (lp.p - 2) ** 2 < lp.d


class TestMethodBStar:
    def test_worked_examples(self):
        out = select_params(913, "B*")
        assert (out.params.d, out.params.p, out.params.q) == (5, 5, 5)
        out = select_params(64469, "B*")
        assert (out.params.d, out.params.p, out.params.q) == (13, 5, 3)

    @given(odd_n)
    def test_never_selects_q_one(self, n):
        out = select_params(n, "B*")
        if out.ok:
            assert out.params.q != 1
            if select_params(n, "B").params.q == 1:
                # the repair turns (P, 1) into (P+2, P+2)
                assert out.params.q == out.params.p

    @given(odd_n)
    def test_rewrite_preserves_discriminant(self, n):
        b = select_params(n, "B")
        bs = select_params(n, "B*")
        if b.ok and bs.ok:
            assert b.params.d == bs.params.d


class TestMethodC:
    def test_starts_at_41(self):
        out = select_params(3, "C")
        assert out.ok and abs(out.params.d) >= 41

    @given(odd_n)
    def test_matches_method_a_shape(self, n):
        out = select_params(n, "C")
        if out.ok:
            lp = out.params
            assert lp.p == 1 and 4 * lp.q == 1 - lp.d
            assert abs(lp.d) >= 41


class TestMethodD:
    @given(odd_n)
    def test_q_always_two(self, n):
        out = select_params(n, "D")
        if out.ok:
            assert out.params.q == 2
            assert out.params.d == out.params.p**2 - 8
            assert out.params.p >= 4


class TestMethodR:
    def test_deterministic_per_seed(self):
        a = select_params(10**6 + 3, "R", seed=42)
        b = select_params(10**6 + 3, "R", seed=42)
        assert a.params == b.params

    def test_seed_changes_stream(self):
        outs = {select_params(10**6 + 3, "R", seed=s).params for s in range(8)}
        assert len(outs) > 1

    @given(odd_n, st.integers(min_value=0, max_value=2**64 - 1))
    def test_draws_stay_in_range(self, n, seed):
        out = select_params(n, "R", seed=seed)
        if out.ok:
            assert 1 <= out.params.p <= n - 1
            assert 1 <= out.params.q <= n - 1

    def test_splitmix_reference_vector(self):
        # reference outputs for the well-known 64-bit generator, seed 0
        gen = splitmix64(0)
        assert next(gen) == 0xE220A8397B1DCDAF
        assert next(gen) == 0x6E789E6AA1B965F4
        assert next(gen) == 0x06C45D188009454F

    def test_stream_key_folds_wide_n(self):
        wide = stream_key(2**200 + 12345, seed=9)
        assert 0 <= wide < 2**64
        assert stream_key(2**200 + 12345, seed=9) == wide
        assert stream_key(2**200 + 12345, seed=10) != wide

    def test_mix64_is_a_bijection_sample(self):
        seen = {mix64(x) for x in range(4096)}
        assert len(seen) == 4096


class TestSearchLimits:
    def test_constants(self):
        assert SEARCH_CAP == 1000
        assert SQUARE_CHECK_AFTER == 20

    def test_square_bailout_is_reachable(self):
        n = 1009**2
        assert is_perfect_square(n)[0]
        out = select_params(n, "A")
        assert out.is_composite
        assert out.certificate.kind == KIND_PERFECT_SQUARE
