"""Modular-arithmetic primitives against stdlib and brute-force oracles."""

from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bpsw.arith import (
    is_perfect_square,
    isqrt,
    jacobi,
    mod_pow,
    mod_pow_trace,
    small_prime_sieve,
    split_twos,
)


def legendre(a: int, p: int) -> int:
    """(a/p) for odd prime p via Euler's criterion; the test-side oracle."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def jacobi_oracle(a: int, n: int) -> int:
    """Factor n by trial division and multiply Legendre symbols."""
    assert n > 0 and n % 2 == 1
    result = 1
    m = n
    for p in range(3, m + 1, 2):
        if p * p > m:
            break
        while m % p == 0:
            result *= legendre(a, p)
            m //= p
    if m > 1:
        result *= legendre(a, m)
    return result


class TestModPow:
    @given(
        st.integers(min_value=-(10**12), max_value=10**12),
        st.integers(min_value=0, max_value=10**6),
        st.integers(min_value=2, max_value=10**12),
    )
    def test_matches_builtin_pow(self, base, exponent, modulus):
        assert mod_pow(base, exponent, modulus) == pow(base, exponent, modulus)

    def test_rejects_bad_modulus_and_exponent(self):
        with pytest.raises(ValueError):
            mod_pow(2, 3, 1)
        with pytest.raises(ValueError):
            mod_pow(2, -1, 7)

    def test_trace_final_value_and_length(self):
        trace = mod_pow_trace(2, 340, 341)
        assert trace == [2, 4, 32, 1, 2, 4, 32, 1, 1]
        assert len(trace) == 340 .bit_length()
        assert trace[-1] == pow(2, 340, 341)

    @given(
        st.integers(min_value=2, max_value=10**6),
        st.integers(min_value=1, max_value=10**6),
        st.integers(min_value=2, max_value=10**6),
    )
    def test_trace_prefixes_are_partial_exponents(self, base, exponent, modulus):
        trace = mod_pow_trace(base, exponent, modulus)
        bits = exponent.bit_length()
        assert len(trace) == bits
        for i in range(bits):
            partial = exponent >> (bits - 1 - i)
            assert trace[i] == pow(base, partial, modulus)


class TestJacobi:
    @given(
        st.integers(min_value=-(10**6), max_value=10**6),
        st.integers(min_value=3, max_value=9999).filter(lambda n: n % 2 == 1),
    )
    def test_matches_factored_oracle(self, a, n):
        assert jacobi(a, n) == jacobi_oracle(a, n)

    def test_multiplicative_in_top_argument(self):
        for n in (15, 21, 35, 105, 9999):
            for a in range(1, 50):
                for b in range(1, 50):
                    assert jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n)

    def test_rejects_even_or_nonpositive_modulus(self):
        with pytest.raises(ValueError):
            jacobi(3, 10)
        with pytest.raises(ValueError):
            jacobi(3, -7)

    def test_known_values(self):
        assert jacobi(5, 323) == -1
        assert jacobi(5, 913) == -1
        assert jacobi(-1, 3) == -1
        assert jacobi(-1, 5) == 1
        assert jacobi(15, 9) == 0


class TestIsqrt:
    @given(st.integers(min_value=0, max_value=10**40))
    def test_matches_math_isqrt(self, n):
        assert isqrt(n) == math.isqrt(n)

    @given(st.integers(min_value=0, max_value=10**20))
    def test_perfect_square_detector(self, n):
        ok, root = is_perfect_square(n)
        assert ok == (math.isqrt(n) ** 2 == n)
        if ok:
            assert root * root == n

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            isqrt(-1)


class TestSplitTwos:
    @given(st.integers(min_value=1, max_value=10**18))
    def test_reconstructs_and_is_odd(self, m):
        d, s = split_twos(m)
        assert d % 2 == 1
        assert d << s == m

    def test_examples(self):
        assert split_twos(340) == (85, 2)
        assert split_twos(324) == (81, 2)
        assert split_twos(1) == (1, 0)


class TestSieve:
    def test_against_trial_division(self):
        primes = small_prime_sieve(1000)
        slow = [
            n
            for n in range(2, 1000)
            if all(n % d for d in range(2, int(n**0.5) + 1))
        ]
        assert primes == slow

    def test_bound_is_exclusive(self):
        assert small_prime_sieve(7)[-1] == 5
        assert small_prime_sieve(8)[-1] == 7

    def test_rejects_tiny_bound(self):
        with pytest.raises(ValueError):
            small_prime_sieve(1)
