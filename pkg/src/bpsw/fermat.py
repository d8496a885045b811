"""Fermat-side probable-prime conditions to an integer base.

Three nested conditions on odd n and base a with gcd(a, n) = 1:

  * Fermat:        a**(n-1) == 1 (mod n)
  * Euler:         a**((n-1)/2) == (a/n) (mod n)
  * strong Fermat: with n-1 = d * 2**s, either a**d == 1 or
                   a**(d * 2**r) == -1 (mod n) for some 0 <= r < s

strong => Euler => Fermat, so every strong pseudoprime is an Euler
pseudoprime and every Euler pseudoprime is a Fermat pseudoprime.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import gcd, jacobi, mod_pow, split_twos
from .certificates import (
    KIND_FAILED_EULER_CRITERION,
    KIND_FAILED_FERMAT,
    KIND_FAILED_SPRP,
    KIND_SMALL_FACTOR,
    Classification,
    composite,
    probable_prime,
)

__all__ = ["StrongDecomposition", "is_prp", "is_epsp_condition", "is_sprp"]


@dataclass(frozen=True)
class StrongDecomposition:
    """m = d * 2**s with d odd, for m = n-1 (Fermat side) or n+1 (Lucas side)."""

    d: int
    s: int
    direction: str  # "n-1" or "n+1"

    @classmethod
    def of_n_minus_one(cls, n: int) -> "StrongDecomposition":
        d, s = split_twos(n - 1)
        return cls(d, s, "n-1")

    @classmethod
    def of_n_plus_one(cls, n: int) -> "StrongDecomposition":
        d, s = split_twos(n + 1)
        return cls(d, s, "n+1")


def _check_base(n: int, a: int) -> Classification | None:
    """Shared precondition handling; returns a factor certificate or None."""
    if n <= 1 or n % 2 == 0:
        raise ValueError("classifier requires odd n >= 3")
    g = gcd(a, n)
    if g == n:
        raise ValueError("base is divisible by n; congruences carry no information")
    if g > 1:
        return composite(KIND_SMALL_FACTOR, n, factor=g, base=a)
    return None


def is_prp(n: int, a: int) -> Classification:
    """Fermat condition: is n a probable prime to base a?"""
    early = _check_base(n, a)
    if early is not None:
        return early
    residue = mod_pow(a, n - 1, n)
    if residue == 1:
        return probable_prime()
    return composite(KIND_FAILED_FERMAT, n, base=a, residue=residue)


def is_epsp_condition(n: int, a: int) -> Classification:
    """Euler condition: a**((n-1)/2) must match the Jacobi symbol (a/n)."""
    early = _check_base(n, a)
    if early is not None:
        return early
    j = jacobi(a, n)  # gcd(a, n) == 1 here, so j is +-1
    residue = mod_pow(a, (n - 1) // 2, n)
    if residue == j % n:
        return probable_prime()
    return composite(KIND_FAILED_EULER_CRITERION, n, base=a, residue=residue, jacobi=j)


def is_sprp(n: int, a: int) -> Classification:
    """Strong Fermat condition via the d * 2**r residue chain.

    On composite detection the chain stops at exponent (n-1)/2 or earlier;
    the certificate records the residues seen.
    """
    early = _check_base(n, a)
    if early is not None:
        return early
    dec = StrongDecomposition.of_n_minus_one(n)
    x = mod_pow(a, dec.d, n)
    chain = [x]
    if x == 1 or x == n - 1:
        return probable_prime()
    for _ in range(dec.s - 1):
        x = x * x % n
        chain.append(x)
        if x == n - 1:
            return probable_prime()
        if x == 1:
            break  # nontrivial square root of 1 already seen; composite
    return composite(
        KIND_FAILED_SPRP, n, base=a, d=dec.d, s=dec.s, chain=chain
    )
