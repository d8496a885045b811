"""Pseudoprime kind names and the flag bits shared by both census backends."""

from __future__ import annotations

PSP2 = 1
SPSP2 = 2
EPSP2 = 4
LPSP = 8
SLPSP = 16
VPSP = 32
EULER_Q_PSP = 64
SELECTION_ERROR = 128

KIND_BITS: dict[str, int] = {
    "psp2": PSP2,
    "spsp2": SPSP2,
    "epsp2": EPSP2,
    "lpsp": LPSP,
    "slpsp": SLPSP,
    "vpsp": VPSP,
    "euler_q_psp": EULER_Q_PSP,
}

CENSUS_KINDS: tuple[str, ...] = tuple(KIND_BITS)

FERMAT_MASK = PSP2 | SPSP2 | EPSP2
LUCAS_MASK = LPSP | SLPSP | VPSP | EULER_Q_PSP

METHOD_IDS: dict[str, int] = {"A": 0, "A*": 1, "B": 2, "B*": 3, "C": 4, "D": 5, "R": 6}


def kinds_to_mask(kinds) -> int:
    mask = 0
    for name in kinds:
        try:
            mask |= KIND_BITS[name]
        except KeyError:
            raise ValueError(f"unknown pseudoprime kind: {name!r}") from None
    return mask


def mask_to_kinds(mask: int) -> frozenset[str]:
    names = {name for name, bit in KIND_BITS.items() if mask & bit}
    if mask & SELECTION_ERROR:
        names.add("error")
    return frozenset(names)
