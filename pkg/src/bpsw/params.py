"""Selection of Lucas parameters (D, P, Q) for a given odd n.

Seven published recipes, all searching for jacobi(D, n) = -1:

  A   D = 5, -7, 9, -11, ...; P = 1, Q = (1 - D)/4
  A*  like A, but a selected Q = -1 (i.e. D = 5) is replaced by P = Q = 5
  B   D = 5, 9, 13, ...; P = smallest odd exceeding sqrt(D), Q = (P**2 - D)/4
  B*  like B, but a selected Q = 1 becomes Q = P + Q + 1, P = P + 2 (same D)
  C   like A but starting at D = 41: 41, -43, 45, -47, ...
  D   Q = 2; P = 4, 5, 6, ... until jacobi(P**2 - 8, n) = -1
  R   P, Q drawn uniformly from [1, n-1] until D = P**2 - 4*Q is nonzero
      and jacobi(D, n) = -1 (deterministic per-n splitmix64 streams)

Every method shares the same escape hatches: a zero Jacobi symbol with
n not dividing |D| certifies a factor; after 20 jacobi = +1 results n is
checked for being a perfect square (squares can never reach -1); a search
cap of 1000 candidates turns into an exhausted-search outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .arith import gcd, is_perfect_square, isqrt, jacobi
from .certificates import (
    KIND_PERFECT_SQUARE,
    KIND_ZERO_JACOBI,
    CompositeCertificate,
)
from .lucas import LucasParams

__all__ = [
    "SelectionOutcome",
    "select_method_a",
    "select_method_a_star",
    "select_method_b",
    "select_method_b_star",
    "select_method_c",
    "select_method_d",
    "select_method_r",
    "select_params",
    "METHOD_NAMES",
    "SEARCH_CAP",
    "SQUARE_CHECK_AFTER",
]

SEARCH_CAP = 1000
SQUARE_CHECK_AFTER = 20

METHOD_NAMES = ("A", "A*", "B", "B*", "C", "D", "R")


@dataclass(frozen=True)
class SelectionOutcome:
    """Either params, or a composite certificate, or an exhausted search."""

    params: LucasParams | None = None
    certificate: CompositeCertificate | None = None
    exhausted: bool = False

    @property
    def ok(self) -> bool:
        return self.params is not None

    @property
    def is_composite(self) -> bool:
        return self.certificate is not None


def _finish(n: int, d: int, p: int, q: int, source: str) -> SelectionOutcome:
    g = gcd(q, n)
    if 1 < g < n:
        return SelectionOutcome(
            certificate=CompositeCertificate(
                KIND_ZERO_JACOBI, n, {"factor": g, "via": "gcd(Q,n)", "q": q}
            )
        )
    return SelectionOutcome(params=LucasParams(d, p, q, source))


def _search(
    n: int,
    candidates: Iterable[tuple[int, int, int]],
    source: str,
    rewrite: Callable[[int, int, int], tuple[int, int, int]] | None = None,
) -> SelectionOutcome:
    """Walk (D, P, Q) candidates until jacobi(D, n) = -1 or an escape fires."""
    if n <= 1 or n % 2 == 0:
        raise ValueError("selection requires odd n >= 3")
    plus_ones = 0
    for count, (d, p, q) in enumerate(candidates):
        if count >= SEARCH_CAP:
            break
        j = jacobi(d, n)
        if j == -1:
            if rewrite is not None:
                d, p, q = rewrite(d, p, q)
            return _finish(n, d, p, q, source)
        if j == 0:
            if d % n != 0:
                # 1 < gcd < n is guaranteed: jacobi = 0 makes it > 1 and
                # n not dividing D keeps it proper.
                return SelectionOutcome(
                    certificate=CompositeCertificate(
                        KIND_ZERO_JACOBI,
                        n,
                        {"factor": gcd(abs(d), n), "via": "gcd(D,n)", "d": d},
                    )
                )
            continue  # n divides D; this candidate says nothing, keep going
        plus_ones += 1
        if plus_ones == SQUARE_CHECK_AFTER:
            square, root = is_perfect_square(n)
            if square:
                return SelectionOutcome(
                    certificate=CompositeCertificate(
                        KIND_PERFECT_SQUARE, n, {"root": root}
                    )
                )
    return SelectionOutcome(exhausted=True)


def _alternating(start: int) -> Iterator[int]:
    """start, -(start+2), start+4, ... : |D| ascends by 2, signs alternate."""
    d = start
    while True:
        yield d
        d = -(d + 2) if d > 0 else -(d - 2)


def _candidates_a(start: int) -> Iterator[tuple[int, int, int]]:
    for d in _alternating(start):
        yield d, 1, (1 - d) // 4


def _candidates_b() -> Iterator[tuple[int, int, int]]:
    d = 5
    while True:
        p = isqrt(d) + 1  # smallest integer exceeding sqrt(D)
        if p % 2 == 0:
            p += 1
        yield d, p, (p * p - d) // 4
        d += 4


def _candidates_d() -> Iterator[tuple[int, int, int]]:
    p = 4
    while True:
        yield p * p - 8, p, 2
        p += 1


def select_method_a(n: int) -> SelectionOutcome:
    return _search(n, _candidates_a(5), "A")


def select_method_a_star(n: int) -> SelectionOutcome:
    """Method A with the Q = -1 repair: D = 5 selects P = Q = 5 instead."""

    def rewrite(d: int, p: int, q: int) -> tuple[int, int, int]:
        if q == -1:
            return 5, 5, 5
        return d, p, q

    return _search(n, _candidates_a(5), "A*", rewrite)


def select_method_b(n: int) -> SelectionOutcome:
    return _search(n, _candidates_b(), "B")


def select_method_b_star(n: int) -> SelectionOutcome:
    """Method B with the Q = 1 repair: Q <- P + Q + 1, P <- P + 2 (same D)."""

    def rewrite(d: int, p: int, q: int) -> tuple[int, int, int]:
        if q == 1:
            return d, p + 2, p + q + 1
        return d, p, q

    return _search(n, _candidates_b(), "B*", rewrite)


def select_method_c(n: int) -> SelectionOutcome:
    # Q = -1 needs D = 5, which this sequence never visits, so no repair rule.
    return _search(n, _candidates_a(41), "C")


def select_method_d(n: int) -> SelectionOutcome:
    return _search(n, _candidates_d(), "D")


_MASK64 = (1 << 64) - 1


def mix64(x: int) -> int:
    """splitmix64 finalizer; the documented scrambler behind Method R."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def stream_key(n: int, seed: int) -> int:
    """Per-n stream key: seed XOR mix64 folded over the 64-bit limbs of n."""
    key = seed & _MASK64
    while n:
        key ^= mix64(n & _MASK64)
        n >>= 64
    return key


def splitmix64(state: int) -> Iterator[int]:
    """The splitmix64 sequence from a 64-bit state."""
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        yield mix64(state)


def _candidates_r(n: int, seed: int) -> Iterator[tuple[int, int, int]]:
    draw = splitmix64(stream_key(n, seed))
    span = n - 1
    while True:
        p = 1 + next(draw) % span
        q = 1 + next(draw) % span
        yield p * p - 4 * q, p, q


def select_method_r(n: int, seed: int = 0) -> SelectionOutcome:
    """Uniform random (P, Q) from deterministic per-n splitmix64 streams."""
    if n <= 1 or n % 2 == 0:
        raise ValueError("selection requires odd n >= 3")
    return _search(n, _candidates_r(n, seed), "R")


def select_params(n: int, method: str = "A*", seed: int = 0) -> SelectionOutcome:
    """Dispatch by method name; ``seed`` only matters for Method R."""
    if method == "A":
        return select_method_a(n)
    if method == "A*":
        return select_method_a_star(n)
    if method == "B":
        return select_method_b(n)
    if method == "B*":
        return select_method_b_star(n)
    if method == "C":
        return select_method_c(n)
    if method == "D":
        return select_method_d(n)
    if method == "R":
        return select_method_r(n, seed)
    raise ValueError(f"unknown selection method: {method!r}")
