"""Shared fixtures: sieve-based primality oracle and a cached big census."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")


def sieve_bools(limit: int) -> np.ndarray:
    """Boolean primality array for [0, limit) by plain Eratosthenes."""
    flags = np.ones(limit, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


@pytest.fixture(scope="session")
def prime_flags_1e6() -> np.ndarray:
    return sieve_bools(10**6)


@pytest.fixture(scope="session")
def primes_1e6(prime_flags_1e6) -> list[int]:
    return [int(p) for p in np.flatnonzero(prime_flags_1e6)]


@pytest.fixture(scope="session")
def census_1e7():
    """One full scan to 10^7 with the default method, shared by many tests."""
    from bpsw import census

    return census.scan_range(3, 10**7, "A*")
