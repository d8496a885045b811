"""Pseudoprime censuses over ranges of odd n.

Primality inside a scan comes from a segmented sieve, never from the
classifiers being counted -- a circular census would be worthless.  Scans
are chunked, deterministic under any chunk size or worker count, resumable
from JSON checkpoints, and report cumulative counts at every power of ten.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernel
from .arith import isqrt
from .kinds import (
    CENSUS_KINDS,
    KIND_BITS,
    LUCAS_MASK,
    SELECTION_ERROR,
    kinds_to_mask,
    mask_to_kinds,
)
from .params import select_params

__all__ = [
    "CensusRecord",
    "CountTable",
    "ScanResult",
    "scan_range",
    "first_k",
    "overlap_report",
    "method_comparison",
    "MethodComparisonRow",
    "write_list_files",
    "CSV_HEADER",
]

CSV_HEADER = ("bound", "method", "psp2", "spsp2", "epsp2", "lpsp", "slpsp", "vpsp")
CSV_KINDS = CSV_HEADER[2:]
DESK_SCALE_CEILING = 10**8


# ---------------------------------------------------------------------------
# Segmented sieve (the primality oracle for scans).


def _base_primes(limit: int) -> np.ndarray:
    """Odd primes <= limit as an int64 array."""
    if limit < 3:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    primes = np.flatnonzero(flags).astype(np.int64)
    return primes[primes % 2 == 1]


def _odd_composites(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Odd composite n with lo <= n < hi, ascending, as uint64."""
    first = lo | 1
    if first >= hi:
        return np.zeros(0, dtype=np.uint64)
    size = (hi - first + 1) // 2
    is_comp = np.zeros(size, dtype=bool)
    for p in base:
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, ((first + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start >= hi:
            continue
        is_comp[(start - first) // 2 :: p] = True
    return (first + 2 * np.flatnonzero(is_comp)).astype(np.uint64)


# ---------------------------------------------------------------------------
# Scan results.


@dataclass(frozen=True)
class CensusRecord:
    """One flagged n: which pseudoprime kinds it hit and with what params."""

    n: int
    flags: frozenset[str]
    method: str
    params: dict | None = None


@dataclass(frozen=True)
class CountTable:
    """Cumulative pseudoprime counts at each bound, one row per bound."""

    method: str
    kinds: tuple[str, ...]
    bounds: tuple[int, ...]
    counts: tuple[dict[str, int], ...]

    def row(self, bound: int) -> dict[str, int]:
        return self.counts[self.bounds.index(bound)]

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for bound, row in zip(self.bounds, self.counts):
            writer.writerow(
                [bound, self.method] + [row.get(kind, 0) for kind in CSV_KINDS]
            )
        return buf.getvalue()


@dataclass(frozen=True)
class ScanResult:
    lo: int
    hi: int
    method: str
    kinds: tuple[str, ...]
    seed: int
    records: tuple[CensusRecord, ...]
    table: CountTable

    def ns_with(self, kind: str) -> list[int]:
        return [r.n for r in self.records if kind in r.flags]


def _bucket_bounds(lo: int, hi: int) -> list[int]:
    bounds = []
    b = 10
    while b < hi:
        if b > lo:
            bounds.append(b)
        b *= 10
    bounds.append(hi)
    return bounds


def _segments(lo: int, hi: int, chunk: int) -> list[tuple[int, int]]:
    return [(a, min(a + chunk, hi)) for a in range(lo, hi, chunk)]


def _classify_segment(args) -> tuple[int, list[tuple[int, int]]]:
    (index, seg_lo, seg_hi, base, method, mask, seed, backend) = args
    ns = _odd_composites(seg_lo, seg_hi, base)
    if len(ns) == 0:
        return index, []
    flags = _kernel.classify_block(ns, method, mask, seed, backend)
    hits = [(int(n), int(f)) for n, f in zip(ns, flags) if f]
    return index, hits


def _attach_params(n: int, flags: int, method: str, seed: int) -> dict | None:
    if not flags & LUCAS_MASK:
        return None
    outcome = select_params(n, method, seed)
    return outcome.params.to_dict() if outcome.ok else None


def scan_range(
    lo: int,
    hi: int,
    method: str = "A*",
    kinds=CENSUS_KINDS,
    *,
    chunk: int = 1 << 18,
    workers: int = 1,
    seed: int = 0,
    checkpoint: str | None = None,
    backend: str | None = None,
    allow_above_ceiling: bool = False,
) -> ScanResult:
    """Classify every odd composite in [lo, hi) and tabulate pseudoprimes.

    Deterministic for a given (lo, hi, method, kinds, seed) regardless of
    chunk size, worker count, or backend.  ``checkpoint`` names a JSON file
    updated after every finished segment and consulted on restart.
    """
    if lo < 3:
        raise ValueError("scan range must start at 3 or above")
    if hi < lo:
        raise ValueError("scan range is empty the wrong way around")
    if hi > DESK_SCALE_CEILING and not allow_above_ceiling:
        raise ValueError(
            f"bound {hi} exceeds the desk-scale ceiling {DESK_SCALE_CEILING}; "
            "pass allow_above_ceiling=True to override"
        )
    kinds = tuple(kinds)
    mask = kinds_to_mask(kinds)
    segments = _segments(lo, hi, chunk)
    start_index = 0
    hits: list[tuple[int, int]] = []

    ck_state = None
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint, "r", encoding="ascii") as fh:
            ck_state = json.load(fh)
        expected = {
            "lo": lo, "hi": hi, "method": method, "kinds": list(kinds),
            "chunk": chunk, "seed": seed,
        }
        if {k: ck_state.get(k) for k in expected} != expected:
            raise ValueError(
                f"checkpoint {checkpoint!r} belongs to a different scan; "
                "delete it or point at another file"
            )
        start_index = ck_state["next_index"]
        hits = [tuple(h) for h in ck_state["hits"]]

    base = _base_primes(isqrt(max(hi - 1, 3)) + 1)
    todo = [
        (i, seg[0], seg[1], base, method, mask, seed, backend)
        for i, seg in enumerate(segments)
        if i >= start_index
    ]

    def save_checkpoint(next_index: int) -> None:
        if not checkpoint:
            return
        state = {
            "lo": lo, "hi": hi, "method": method, "kinds": list(kinds),
            "chunk": chunk, "seed": seed, "next_index": next_index,
            "hits": [list(h) for h in hits],
        }
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(checkpoint) or ".")
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            json.dump(state, fh)
        os.replace(tmp, checkpoint)

    if workers > 1 and todo:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map() preserves submission order, so the merge is deterministic
            for index, seg_hits in pool.map(_classify_segment, todo):
                hits.extend(seg_hits)
                save_checkpoint(index + 1)
    else:
        for args in todo:
            index, seg_hits = _classify_segment(args)
            hits.extend(seg_hits)
            save_checkpoint(index + 1)

    records = tuple(
        CensusRecord(
            n=n,
            flags=mask_to_kinds(f),
            method=method,
            params=_attach_params(n, f, method, seed),
        )
        for n, f in hits
    )
    bounds = _bucket_bounds(lo, hi)
    counts = []
    for bound in bounds:
        row = {kind: 0 for kind in kinds}
        errors = 0
        for n, f in hits:
            if n >= bound:
                continue
            for kind in kinds:
                if f & KIND_BITS[kind]:
                    row[kind] += 1
            if f & SELECTION_ERROR:
                errors += 1
        if errors:
            row["error"] = errors
        counts.append(row)
    table = CountTable(method, kinds, tuple(bounds), tuple(counts))
    return ScanResult(lo, hi, method, kinds, seed, records, table)


def first_k(
    kind: str,
    k: int = 10,
    method: str = "A*",
    *,
    seed: int = 0,
    backend: str | None = None,
) -> list[int]:
    """The first k pseudoprimes of one kind, scanning upward in blocks."""
    if kind not in KIND_BITS:
        raise ValueError(f"unknown pseudoprime kind: {kind!r}")
    if k < 1:
        raise ValueError("k must be >= 1")
    found: list[int] = []
    lo, hi = 3, 1 << 16
    while True:
        result = scan_range(lo, hi, method, (kind,), seed=seed, backend=backend)
        found.extend(result.ns_with(kind))
        if len(found) >= k:
            return found[:k]
        if hi >= DESK_SCALE_CEILING:
            raise ValueError(
                f"fewer than {k} {kind} pseudoprimes below the desk-scale ceiling"
            )
        lo, hi = hi, min(hi * 4, DESK_SCALE_CEILING)


def overlap_report(
    bound: int,
    method: str = "A*",
    combos: tuple[tuple[str, ...], ...] = (
        ("psp2", "lpsp"),
        ("spsp2", "slpsp"),
        ("lpsp", "vpsp"),
        ("spsp2", "slpsp", "vpsp"),
    ),
    *,
    seed: int = 0,
    backend: str | None = None,
) -> dict[tuple[str, ...], list[int]]:
    """Intersections of pseudoprime sets below a bound, from a single scan."""
    wanted = sorted({kind for combo in combos for kind in combo})
    result = scan_range(3, bound, method, tuple(wanted), seed=seed, backend=backend)
    sets = {kind: set(result.ns_with(kind)) for kind in wanted}
    out: dict[tuple[str, ...], list[int]] = {}
    for combo in combos:
        common = set.intersection(*(sets[kind] for kind in combo))
        out[tuple(combo)] = sorted(common)
    return out


@dataclass(frozen=True)
class MethodComparisonRow:
    method: str
    lpsp: int
    vpsp_q_unit: int  # vpsp with Q == +-1 (mod n)
    vpsp_q_other: int
    both: int  # simultaneously lpsp and vpsp


def method_comparison(
    bound: int,
    methods=("A", "A*", "B", "B*", "C", "D", "R"),
    *,
    seed: int = 0,
    backend: str | None = None,
) -> list[MethodComparisonRow]:
    """Per-method Lucas/V pseudoprime tallies below a bound."""
    rows = []
    for method in methods:
        result = scan_range(
            3, bound, method, ("lpsp", "vpsp"), seed=seed, backend=backend
        )
        lpsp = set(result.ns_with("lpsp"))
        vpsp = set(result.ns_with("vpsp"))
        unit = other = 0
        for record in result.records:
            if "vpsp" not in record.flags:
                continue
            q = record.params["q"] % record.n
            if q == 1 or q == record.n - 1:
                unit += 1
            else:
                other += 1
        rows.append(
            MethodComparisonRow(method, len(lpsp), unit, other, len(lpsp & vpsp))
        )
    return rows


def write_list_files(result: ScanResult, outdir: str) -> list[str]:
    """One sorted, deduplicated, newline-terminated ASCII file per kind."""
    os.makedirs(outdir, exist_ok=True)
    paths = []
    for kind in result.kinds:
        ns = sorted(set(result.ns_with(kind)))
        path = os.path.join(outdir, f"{kind}.txt")
        with open(path, "w", encoding="ascii") as fh:
            fh.writelines(f"{n}\n" for n in ns)
        paths.append(path)
    return paths
