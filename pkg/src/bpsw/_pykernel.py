"""Pure-Python census classification backend.

Routes every n through the real classifiers, so it works for any size of n;
the compiled backend in ``bpsw._speedups`` mirrors its verdicts bit for bit
on word-sized n (enforced by tests).
"""

from __future__ import annotations

from .fermat import is_epsp_condition, is_prp, is_sprp
from .kinds import (
    EPSP2,
    EULER_Q_PSP,
    FERMAT_MASK,
    LPSP,
    LUCAS_MASK,
    PSP2,
    SELECTION_ERROR,
    SLPSP,
    SPSP2,
    VPSP,
)
from .lucas import euler_q_check, is_slprp, is_vprp, ladder_with_half
from .params import select_params

__all__ = ["classify_one", "classify_block", "witness_search"]


def classify_one(n: int, method: str, kinds_mask: int, seed: int = 0) -> int:
    """Flag bits for one odd composite n, masked to the requested kinds."""
    flags = 0
    if kinds_mask & FERMAT_MASK:
        if is_prp(n, 2).is_probable_prime:
            flags |= PSP2
            if is_epsp_condition(n, 2).is_probable_prime:
                flags |= EPSP2
            if is_sprp(n, 2).is_probable_prime:
                flags |= SPSP2
    if kinds_mask & LUCAS_MASK:
        outcome = select_params(n, method, seed)
        if outcome.exhausted:
            flags |= SELECTION_ERROR
        elif outcome.ok:
            params = outcome.params
            strong = is_slprp(n, params)
            if strong.classification.is_probable_prime:
                flags |= SLPSP
                triple, q_half = strong.triple, strong.q_half
            else:
                triple, q_half = ladder_with_half(n, params)
            if triple.u == 0:
                flags |= LPSP
            if is_vprp(n, params, triple).is_probable_prime:
                flags |= VPSP
            if euler_q_check(n, params, q_half).is_probable_prime:
                flags |= EULER_Q_PSP
        # a composite certificate from selection means no Lucas flags at all
    return flags & (kinds_mask | SELECTION_ERROR)


def classify_block(ns, method: str, kinds_mask: int, seed: int = 0) -> list[int]:
    """Flags for a block of odd composites (any iterable of ints)."""
    return [classify_one(int(n), method, kinds_mask, seed) for n in ns]


def witness_search(n: int) -> tuple[int, int] | None:
    """Exhaustive (P, Q) grid search for the combined-pseudoprime witness.

    Caller has already confirmed n is an odd base-2 Fermat pseudoprime.
    """
    from .arith import gcd, jacobi
    from .lucas import LucasParams, lucas_ladder

    for p in range(1, n):
        for q in range(1, n):
            d = p * p - 4 * q
            if d == 0 or jacobi(d, n) != -1 or gcd(q, n) != 1:
                continue
            triple = lucas_ladder(n, LucasParams(d, p, q), n + 1)
            if triple.u == 0 and triple.v == 2 * q % n:
                return p, q
    return None
