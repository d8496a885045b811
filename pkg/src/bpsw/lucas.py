"""Lucas sequences U_k, V_k and the Lucas-side probable-prime conditions.

With U_0 = 0, U_1 = 1, V_0 = 2, V_1 = P and
X_k = P*X_{k-1} - Q*X_{k-2}, D = P**2 - 4*Q != 0, an odd prime p with
jacobi(D, p) = -1 satisfies

  U_{p+1} == 0,   V_{p+1} == 2*Q,   Q**((p+1)/2) == Q * (Q/p)   (mod p)

and the strong form: with p+1 = d * 2**s, U_d == 0 or V_{d * 2**r} == 0 for
some 0 <= r < s.  Composites passing these are the lpsp / slpsp / vpsp /
Euler-Q pseudoprimes this package counts.

Subscripts are reached by an O(log k) binary chain processing the bits of k
most-significant first: doubling uses U_{2k} = U_k * V_k,
V_{2k} = V_k**2 - 2*Q**k, and the +1 step halves P*U+V and D*U+P*V mod n
(adding n once when the numerator is odd; n odd makes that exact).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .arith import gcd, jacobi, mod_pow, split_twos
from .certificates import (
    KIND_FAILED_EULER_Q,
    KIND_FAILED_LPRP,
    KIND_FAILED_SLPRP,
    KIND_FAILED_VPRP,
    KIND_ZERO_JACOBI,
    Classification,
    composite,
    probable_prime,
)

__all__ = [
    "LucasParams",
    "LucasTriple",
    "StrongLucasOutcome",
    "lucas_naive",
    "lucas_ladder",
    "lucas_ladder_trace",
    "delta_index",
    "is_lprp",
    "is_slprp",
    "is_vprp",
    "euler_q_check",
]


@dataclass(frozen=True)
class LucasParams:
    """Parameters (D, P, Q) with D = P**2 - 4*Q != 0 and P > 0.

    ``source`` records which selection method produced them ("A", "A*", ...,
    "explicit" for hand-supplied pairs).
    """

    d: int
    p: int
    q: int
    source: str = "explicit"

    def __post_init__(self) -> None:
        if self.p <= 0:
            raise ValueError("P must be positive")
        if self.d != self.p * self.p - 4 * self.q:
            raise ValueError("discriminant must equal P**2 - 4*Q")
        if self.d == 0:
            raise ValueError("discriminant must be nonzero")

    @classmethod
    def from_pq(cls, p: int, q: int, source: str = "explicit") -> "LucasParams":
        return cls(p * p - 4 * q, p, q, source)

    def canonical(self, n: int) -> tuple[int, int, int]:
        """(P, Q, D) reduced to [0, n)."""
        return self.p % n, self.q % n, self.d % n

    def to_dict(self) -> dict:
        return {"d": self.d, "p": self.p, "q": self.q, "source": self.source}

    @classmethod
    def from_dict(cls, data: dict) -> "LucasParams":
        return cls(data["d"], data["p"], data["q"], data["source"])


class LucasTriple(NamedTuple):
    """Snapshot (U_k, V_k, Q**k) mod n at subscript k."""

    k: int
    u: int
    v: int
    qk: int


@dataclass(frozen=True)
class StrongLucasOutcome:
    """Result of the strong Lucas condition.

    On probable-prime the chain is continued to subscript n+1 so that
    ``triple`` holds (U_{n+1}, V_{n+1}, Q**(n+1)) and ``q_half`` holds
    Q**((n+1)/2); the V-test and the Euler-Q check read them without
    recomputing anything.  Both are None on composite.
    """

    classification: Classification
    triple: LucasTriple | None = None
    q_half: int | None = None


def _require_odd(n: int) -> None:
    if n <= 1 or n % 2 == 0:
        raise ValueError("Lucas classifiers require odd n >= 3")


def _require_selected(n: int, params: LucasParams) -> None:
    """Enforce the classifier precondition jacobi(D, n) = -1, gcd(Q, n) = 1."""
    if jacobi(params.d, n) != -1:
        raise ValueError("Lucas classifiers require jacobi(D, n) == -1")
    g = gcd(params.q, n)
    if g != 1:
        # jacobi(D,n) == -1 rules out g == n, so g is a proper factor; the
        # selection methods certify this case before it ever gets here.
        raise ValueError(f"Lucas classifiers require gcd(Q, n) == 1 (gcd = {g})")


def lucas_naive(n: int, params: LucasParams, k: int) -> LucasTriple:
    """(U_k, V_k, Q**k) mod n by the direct two-term recurrence; O(k).

    Independent of the binary chain; kept as the slow cross-check.
    """
    _require_odd(n)
    if k < 0:
        raise ValueError("subscript must be >= 0")
    pc, qc, _ = params.canonical(n)
    u, v, qk = 0, 2 % n, 1 % n
    u_next = 1 % n
    v_next = pc
    for _ in range(k):
        u, u_next = u_next, (pc * u_next - qc * u) % n
        v, v_next = v_next, (pc * v_next - qc * v) % n
        qk = qk * qc % n
    return LucasTriple(k, u, v, qk)


def _double(u: int, v: int, qk: int, n: int) -> tuple[int, int, int]:
    return u * v % n, (v * v - 2 * qk) % n, qk * qk % n


def _half(x: int, n: int) -> int:
    return (x + n) >> 1 if x & 1 else x >> 1


def _increment(u: int, v: int, qk: int, pc: int, qc: int, dc: int, n: int) -> tuple[int, int, int]:
    u1 = _half((pc * u + v) % n, n)
    v1 = _half((dc * u + pc * v) % n, n)
    return u1, v1, qk * qc % n


def lucas_ladder(n: int, params: LucasParams, k: int) -> LucasTriple:
    """(U_k, V_k, Q**k) mod n in O(log k) by the MSB-first binary chain."""
    _require_odd(n)
    if k < 0:
        raise ValueError("subscript must be >= 0")
    pc, qc, dc = params.canonical(n)
    u, v, qk = 0, 2 % n, 1 % n
    for i in range(k.bit_length() - 1, -1, -1):
        u, v, qk = _double(u, v, qk, n)
        if (k >> i) & 1:
            u, v, qk = _increment(u, v, qk, pc, qc, dc, n)
    return LucasTriple(k, u, v, qk)


def lucas_ladder_trace(n: int, params: LucasParams, k: int) -> list[LucasTriple]:
    """Every intermediate triple the binary chain visits on the way to k.

    Starts with the subscript-0 triple; each processed bit appends the
    post-doubling triple (skipped for the leading bit, whose doubling is
    0 -> 0) and, when the bit is set, the post-increment triple.
    """
    _require_odd(n)
    if k < 0:
        raise ValueError("subscript must be >= 0")
    pc, qc, dc = params.canonical(n)
    u, v, qk = 0, 2 % n, 1 % n
    sub = 0
    out = [LucasTriple(0, u, v, qk)]
    for i in range(k.bit_length() - 1, -1, -1):
        u, v, qk = _double(u, v, qk, n)
        sub *= 2
        if sub:
            out.append(LucasTriple(sub, u, v, qk))
        if (k >> i) & 1:
            u, v, qk = _increment(u, v, qk, pc, qc, dc, n)
            sub += 1
            out.append(LucasTriple(sub, u, v, qk))
    return out


def delta_index(n: int, params: LucasParams) -> int:
    """delta(n) = n - jacobi(D, n), the subscript where U vanishes for primes."""
    _require_odd(n)
    return n - jacobi(params.d, n)


def is_lprp(n: int, params: LucasParams) -> Classification:
    """Lucas condition U_{n+1} == 0 (mod n); requires jacobi(D, n) = -1."""
    _require_odd(n)
    _require_selected(n, params)
    triple = lucas_ladder(n, params, n + 1)
    if triple.u == 0:
        return probable_prime()
    return composite(
        KIND_FAILED_LPRP, n, params=params.to_dict(), u=triple.u
    )


def is_slprp(n: int, params: LucasParams) -> StrongLucasOutcome:
    """Strong Lucas condition over n+1 = d * 2**s.

    Composite is decided at or before subscript (n+1)/2 = d * 2**(s-1); on
    probable-prime the chain keeps doubling to n+1 (see StrongLucasOutcome).
    """
    _require_odd(n)
    _require_selected(n, params)
    d, s = split_twos(n + 1)
    t = lucas_ladder(n, params, d)
    u, v, qk = t.u, t.v, t.qk
    u_d = u
    v_chain = [v]
    passed = u == 0 or v == 0
    q_half = None
    for r in range(1, s + 1):
        if not passed and r == s:
            break  # composite was already decided at subscript (n+1)/2
        if r == s:
            q_half = qk  # subscript is d * 2**(s-1) == (n+1)/2 right now
        u, v, qk = _double(u, v, qk, n)
        if r < s:
            v_chain.append(v)
            if v == 0:
                passed = True
    if not passed:
        return StrongLucasOutcome(
            composite(
                KIND_FAILED_SLPRP,
                n,
                params=params.to_dict(),
                d=d,
                s=s,
                u_d=u_d,
                v_chain=v_chain,
            )
        )
    return StrongLucasOutcome(probable_prime(), LucasTriple(n + 1, u, v, qk), q_half)


def is_vprp(n: int, params: LucasParams, triple: LucasTriple) -> Classification:
    """V-test: V_{n+1} == 2*Q (mod n), read off a subscript-(n+1) triple."""
    _require_odd(n)
    _require_selected(n, params)
    if triple.k != n + 1:
        raise ValueError("V-test needs the triple at subscript n+1")
    expected = 2 * params.q % n
    if triple.v == expected:
        return probable_prime()
    return composite(
        KIND_FAILED_VPRP, n, params=params.to_dict(), v=triple.v, expected=expected
    )


def euler_q_check(n: int, params: LucasParams, q_power: int) -> Classification:
    """Euler condition on Q: Q**((n+1)/2) == Q * (Q/n) (mod n).

    ``q_power`` is Q**((n+1)/2) mod n, normally surfaced by is_slprp.
    """
    _require_odd(n)
    jq = jacobi(params.q, n)
    if jq == 0:
        g = gcd(params.q, n)
        if 1 < g < n:
            return composite(
                KIND_ZERO_JACOBI, n, factor=g, via="gcd(Q,n)", q=params.q
            )
        raise ValueError("Q is divisible by n; the Euler condition carries no information")
    expected = params.q * jq % n
    if q_power == expected:
        return probable_prime()
    return composite(
        KIND_FAILED_EULER_Q,
        n,
        params=params.to_dict(),
        q_power=q_power,
        expected=expected,
    )


def ladder_with_half(n: int, params: LucasParams) -> tuple[LucasTriple, int]:
    """(triple at n+1, Q**((n+1)/2)) in one chain; used by the census backends."""
    _require_odd(n)
    half = (n + 1) >> 1
    t = lucas_ladder(n, params, half)
    u, v, qk = _double(t.u, t.v, t.qk, n)
    return LucasTriple(n + 1, u, v, qk), t.qk


def verify_prime_congruences(p: int, params: LucasParams) -> bool:
    """Check the four prime congruences at an odd prime p (test helper).

    U_{delta} == 0, V_{delta} == 2*Q**((1-(D/p))/2), U_p == (D/p), V_p == P
    (mod p), valid when gcd(p, 2*Q*D) == 1.
    """
    _require_odd(p)
    dj = jacobi(params.d, p)
    if dj == 0 or gcd(params.q, p) != 1:
        raise ValueError("congruences require gcd(p, Q*D) == 1")
    delta = p - dj
    td = lucas_ladder(p, params, delta)
    tp = lucas_ladder(p, params, p)
    if td.u != 0:
        return False
    if td.v != 2 * mod_pow(params.q, (1 - dj) // 2, p) % p:
        return False
    if tp.u != dj % p:
        return False
    return tp.v == params.p % p
