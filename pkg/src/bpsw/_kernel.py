"""Backend selection: compiled kernel when available, pure Python otherwise.

Import-time choice, overridable per call; both backends produce identical
flag bits (tests enforce it), the compiled one is just orders of magnitude
faster for word-sized n.
"""

from __future__ import annotations

from . import _pykernel
from .kinds import METHOD_IDS

try:
    from . import _speedups

    HAVE_SPEEDUPS = True
except ImportError:  # pragma: no cover - depends on the build environment
    _speedups = None
    HAVE_SPEEDUPS = False

BACKEND = "cython" if HAVE_SPEEDUPS else "python"
KERNEL_LIMIT = _speedups.KERNEL_LIMIT if HAVE_SPEEDUPS else None
WITNESS_LIMIT = 1 << 31

__all__ = [
    "BACKEND",
    "HAVE_SPEEDUPS",
    "KERNEL_LIMIT",
    "classify_block",
    "classify_one",
    "witness_search",
    "resolve_backend",
]


def resolve_backend(backend: str | None) -> str:
    if backend is None:
        return BACKEND
    if backend not in ("cython", "python"):
        raise ValueError(f"unknown backend: {backend!r}")
    if backend == "cython" and not HAVE_SPEEDUPS:
        raise ValueError("compiled backend requested but bpsw._speedups is not built")
    return backend


def _fits_kernel(ns) -> bool:
    if not HAVE_SPEEDUPS or len(ns) == 0:
        return HAVE_SPEEDUPS
    return int(max(ns)) < KERNEL_LIMIT


def classify_block(ns, method: str, kinds_mask: int, seed: int = 0,
                   backend: str | None = None) -> list[int]:
    """Flags for a block of odd composite n; dispatches on backend and size."""
    if method not in METHOD_IDS:
        raise ValueError(f"unknown selection method: {method!r}")
    chosen = resolve_backend(backend)
    if chosen == "cython" and backend is None and not _fits_kernel(ns):
        chosen = "python"  # silently fall back above the word-size limit
    if chosen == "cython":
        out = _speedups.classify_block(ns, METHOD_IDS[method], kinds_mask, seed)
        return [int(f) for f in out]
    return _pykernel.classify_block(ns, method, kinds_mask, seed)


def classify_one(n: int, method: str, kinds_mask: int, seed: int = 0,
                 backend: str | None = None) -> int:
    chosen = resolve_backend(backend)
    if chosen == "cython" and (backend is None and n >= KERNEL_LIMIT):
        chosen = "python"
    if chosen == "cython":
        return _speedups.classify_one(n, METHOD_IDS[method], kinds_mask, seed)
    return _pykernel.classify_one(n, method, kinds_mask, seed)


def witness_search(n: int) -> tuple[int, int] | None:
    if HAVE_SPEEDUPS and n < WITNESS_LIMIT:
        return _speedups.witness_search(n)
    return _pykernel.witness_search(n)
