"""Fermat-side classifiers: plain, Euler-criterion and strong variants."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bpsw.arith import jacobi
from bpsw.certificates import (
    KIND_FAILED_EULER_CRITERION,
    KIND_FAILED_FERMAT,
    KIND_FAILED_SPRP,
    KIND_SMALL_FACTOR,
)
from bpsw.fermat import StrongDecomposition, is_epsp_condition, is_prp, is_sprp

PSP2 = [341, 561, 645, 1105, 1387, 1729, 1905, 2047, 2465, 2701]
EPSP2 = [561, 1105, 1729, 1905, 2047, 2465, 3277, 4033, 4681, 6601]
SPSP2 = [2047, 3277, 4033, 4681, 8321, 15841, 29341, 42799, 49141, 52633]

odd_n = st.integers(min_value=3, max_value=10**6).filter(lambda n: n % 2 == 1)


class TestDecomposition:
    @given(st.integers(min_value=3, max_value=10**12).filter(lambda n: n % 2 == 1))
    def test_roundtrip_both_directions(self, n):
        down = StrongDecomposition.of_n_minus_one(n)
        up = StrongDecomposition.of_n_plus_one(n)
        assert down.d << down.s == n - 1 and down.d % 2 == 1
        assert up.d << up.s == n + 1 and up.d % 2 == 1


class TestIsPrp:
    def test_known_pseudoprimes_pass(self):
        for n in PSP2:
            assert is_prp(n, 2).is_probable_prime

    def test_composite_non_pseudoprime_fails_with_residue(self):
        out = is_prp(9, 2)
        assert not out.is_probable_prime
        assert out.certificate.kind == KIND_FAILED_FERMAT
        assert out.certificate.evidence["residue"] == pow(2, 8, 9)

    @given(odd_n)
    def test_agrees_with_direct_congruence(self, n):
        assert is_prp(n, 2).is_probable_prime == (pow(2, n - 1, n) == 1)

    def test_shared_factor_is_reported_not_tested(self):
        out = is_prp(21, 6)
        assert out.certificate.kind == KIND_SMALL_FACTOR
        assert out.certificate.evidence["factor"] == 3

    def test_rejects_even_n_and_divisible_base(self):
        with pytest.raises(ValueError):
            is_prp(10, 2)
        with pytest.raises(ValueError):
            is_prp(7, 14)


class TestEulerCondition:
    def test_known_euler_pseudoprimes(self):
        for n in EPSP2:
            assert is_epsp_condition(n, 2).is_probable_prime
        # 341 is a psp(2) but fails Euler's criterion
        out = is_epsp_condition(341, 2)
        assert not out.is_probable_prime
        assert out.certificate.kind == KIND_FAILED_EULER_CRITERION

    @given(odd_n)
    def test_agrees_with_direct_congruence(self, n):
        expected = pow(2, (n - 1) // 2, n) == jacobi(2, n) % n
        assert is_epsp_condition(n, 2).is_probable_prime == expected


class TestIsSprp:
    def test_known_strong_pseudoprimes(self):
        for n in SPSP2:
            assert is_sprp(n, 2).is_probable_prime

    def test_weak_pseudoprimes_are_caught(self):
        for n in set(PSP2) - set(SPSP2):
            out = is_sprp(n, 2)
            assert not out.is_probable_prime
            assert out.certificate.kind == KIND_FAILED_SPRP

    def test_certificate_carries_the_chain(self):
        out = is_sprp(341, 2)
        ev = out.certificate.evidence
        assert ev["d"] == 85 and ev["s"] == 2
        assert ev["chain"][0] == pow(2, 85, 341)

    def test_primes_pass(self, primes_1e6):
        for p in primes_1e6[1:2000]:  # odd primes
            assert is_sprp(p, 2).is_probable_prime

    @given(odd_n)
    def test_strong_implies_euler_implies_fermat(self, n):
        s = is_sprp(n, 2).is_probable_prime
        e = is_epsp_condition(n, 2).is_probable_prime
        f = is_prp(n, 2).is_probable_prime
        assert (not s or e) and (not e or f)

    @given(st.integers(min_value=2, max_value=100), odd_n)
    def test_other_bases_match_reference_logic(self, a, n):
        from math import gcd

        if gcd(a, n) != 1:
            return
        d, s = n - 1, 0
        while d % 2 == 0:
            d //= 2
            s += 1
        x = pow(a, d, n)
        expected = x in (1, n - 1) or any(
            (x := x * x % n) == n - 1 for _ in range(s - 1)
        )
        assert is_sprp(n, a).is_probable_prime == expected
