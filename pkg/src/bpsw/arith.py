"""Exact integer arithmetic helpers shared by every classifier.

Everything here works on arbitrary-precision Python ints and raises
ValueError on domain violations rather than guessing.
"""

from __future__ import annotations

from math import gcd as gcd  # re-exported; callers treat this module as the kernel

__all__ = [
    "gcd",
    "mod_pow",
    "mod_pow_trace",
    "jacobi",
    "isqrt",
    "is_perfect_square",
    "split_twos",
    "small_prime_sieve",
]


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """Return base**exponent mod modulus by left-to-right binary squaring.

    The result always lies in [0, modulus).
    """
    if modulus <= 1:
        raise ValueError("modulus must be >= 2")
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    result = 1
    base %= modulus
    for i in range(exponent.bit_length() - 1, -1, -1):
        result = result * result % modulus
        if (exponent >> i) & 1:
            result = result * base % modulus
    return result


def mod_pow_trace(base: int, exponent: int, modulus: int) -> list[int]:
    """Like mod_pow, but return the residue after every bit of the exponent.

    Entry i is base**(prefix of exponent's top i+1 bits) mod modulus; the last
    entry equals mod_pow(base, exponent, modulus).  Empty for exponent == 0.
    """
    if modulus <= 1:
        raise ValueError("modulus must be >= 2")
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    result = 1
    base %= modulus
    trace: list[int] = []
    for i in range(exponent.bit_length() - 1, -1, -1):
        result = result * result % modulus
        if (exponent >> i) & 1:
            result = result * base % modulus
        trace.append(result)
    return trace


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1, computed iteratively.

    Returns -1, 0 or +1.  Accepts any integer a (reduced mod n first).
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("Jacobi symbol is defined for odd n >= 1")
    a %= n
    result = 1
    while a:
        while a & 1 == 0:
            a >>= 1
            if n & 7 in (3, 5):
                result = -result
        a, n = n, a
        if a & 3 == 3 and n & 3 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def isqrt(n: int) -> int:
    """Floor square root by Newton iteration seeded with 2**ceil(bits/2).

    The seed is >= sqrt(n), so the iterates decrease monotonically to the
    floor root; the loop stops as soon as they stop decreasing.
    """
    if n < 0:
        raise ValueError("isqrt of a negative number")
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 1) // 2)
    while True:
        y = (x + n // x) >> 1
        if y >= x:
            return x
        x = y


def is_perfect_square(n: int) -> tuple[bool, int]:
    """Return (True, root) when n is a perfect square, else (False, isqrt(n))."""
    if n < 0:
        return False, 0
    r = isqrt(n)
    return r * r == n, r


def split_twos(m: int) -> tuple[int, int]:
    """Write m = d * 2**s with d odd; return (d, s).  Requires m >= 1."""
    if m < 1:
        raise ValueError("split_twos requires m >= 1")
    s = (m & -m).bit_length() - 1
    return m >> s, s


def small_prime_sieve(bound: int) -> list[int]:
    """All primes < bound, ascending, by a byte-array Eratosthenes sieve."""
    if bound < 2:
        raise ValueError("bound must be >= 2")
    flags = bytearray([1]) * bound
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(bound - 1) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, bound, p)))
    return [i for i in range(2, bound) if flags[i]]
