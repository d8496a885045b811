"""Throughput comparison: compiled census kernel vs the pure-Python one.

Classifies every odd number in [3, bound) with both backends for each
selection method and prints numbers/second plus the speedup factor.  The two
backends must agree bit-for-bit on the flags; this script re-checks that on
the side while it measures.

Usage:
    python3 benchmarks/bench_backends.py [--bound N] [--methods A A* ...]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from bpsw import METHOD_NAMES
from bpsw._kernel import HAVE_SPEEDUPS, classify_block
from bpsw.kinds import CENSUS_KINDS, kinds_to_mask


def run_once(ns, method: str, mask: int, backend: str) -> tuple[float, list[int]]:
    start = time.perf_counter()
    flags = classify_block(ns, method, mask, backend=backend)
    return time.perf_counter() - start, flags


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--bound", type=int, default=200_000,
                        help="classify odd n in [3, bound) (default 200000)")
    parser.add_argument("--methods", nargs="+", default=list(METHOD_NAMES),
                        metavar="M", help="selection methods to benchmark")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for method R (default 0)")
    args = parser.parse_args(argv)

    if not HAVE_SPEEDUPS:
        parser.error("compiled backend is not built; nothing to compare")
    unknown = [m for m in args.methods if m not in METHOD_NAMES]
    if unknown:
        parser.error(f"unknown methods: {unknown}")

    ns = np.arange(3, args.bound, 2, dtype=np.uint64)
    mask = kinds_to_mask(CENSUS_KINDS)
    count = len(ns)
    print(f"classifying {count} odd numbers below {args.bound}, all kinds\n")
    print(f"{'method':<8} {'cython':>12} {'python':>12} {'speedup':>9}")
    print(f"{'':<8} {'n/s':>12} {'n/s':>12}")
    for method in args.methods:
        ct, cflags = run_once(ns, method, mask, "cython")
        pt, pflags = run_once(ns, method, mask, "python")
        if cflags != pflags:
            raise SystemExit(f"backend mismatch for method {method}!")
        print(f"{method:<8} {count / ct:>12.0f} {count / pt:>12.0f} "
              f"{pt / ct:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
