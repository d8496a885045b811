"""The combined primality tests, constructions, and certificate verification.

The original test: base-2 strong Fermat, then parameter selection, then the
strong Lucas condition.  The strengthened variant appends the V-test
(V_{n+1} == 2*Q) and the Euler condition on Q, both read from values the
strong Lucas pass already surfaced, so the extra steps cost almost nothing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from .arith import gcd, jacobi, mod_pow, small_prime_sieve, split_twos
from .certificates import (
    KIND_FAILED_EULER_CRITERION,
    KIND_FAILED_EULER_Q,
    KIND_FAILED_FERMAT,
    KIND_FAILED_LPRP,
    KIND_FAILED_SLPRP,
    KIND_FAILED_SPRP,
    KIND_FAILED_VPRP,
    KIND_PERFECT_SQUARE,
    KIND_SMALL_FACTOR,
    KIND_ZERO_JACOBI,
    CompositeCertificate,
)
from .fermat import is_sprp
from .lucas import (
    LucasParams,
    euler_q_check,
    is_slprp,
    is_vprp,
    lucas_ladder,
    ladder_with_half,
)
from .params import select_params

__all__ = [
    "PipelineReport",
    "StepOutcome",
    "bpsw_original",
    "bpsw_enhanced",
    "is_probable_prime",
    "theorem1_params",
    "Theorem1Report",
    "verify_theorem1",
    "lemma_qr_residue",
    "psp_lpsp_vpsp_witness",
    "verify_certificate",
    "DEFAULT_SIEVE_BOUND",
]

DEFAULT_SIEVE_BOUND = 997

VERDICT_PROBABLE_PRIME = "probable-prime"
VERDICT_COMPOSITE = "composite"
VERDICT_ERROR = "error"


@dataclass(frozen=True)
class StepOutcome:
    """One pipeline step: name, whether it passed, and small diagnostics."""

    step: str
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"step": self.step, "passed": self.passed, "detail": dict(self.detail)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "StepOutcome":
        return cls(data["step"], data["passed"], dict(data["detail"]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StepOutcome):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash((self.step, self.passed))


@dataclass(frozen=True)
class PipelineReport:
    """Full account of one run: verdict, steps, params, certificate.

    ``step5_informative`` is False when |Q| is a power of two, in which case
    the Euler condition on Q is implied by the base-2 work and adds nothing;
    None when the run never selected params or ran the original variant.
    """

    n: int
    variant: str
    verdict: str
    steps: tuple[StepOutcome, ...]
    params: LucasParams | None = None
    certificate: CompositeCertificate | None = None
    step5_informative: bool | None = None

    @property
    def is_probable_prime(self) -> bool:
        return self.verdict == VERDICT_PROBABLE_PRIME

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "variant": self.variant,
            "verdict": self.verdict,
            "steps": [s.to_dict() for s in self.steps],
            "params": None if self.params is None else self.params.to_dict(),
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "step5_informative": self.step5_informative,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PipelineReport":
        params = data.get("params")
        cert = data.get("certificate")
        return cls(
            n=data["n"],
            variant=data["variant"],
            verdict=data["verdict"],
            steps=tuple(StepOutcome.from_dict(s) for s in data["steps"]),
            params=None if params is None else LucasParams.from_dict(params),
            certificate=None if cert is None else CompositeCertificate.from_dict(cert),
            step5_informative=data.get("step5_informative"),
        )

    @classmethod
    def from_json(cls, text: str) -> "PipelineReport":
        return cls.from_dict(json.loads(text))


@lru_cache(maxsize=8)
def _presieve_primes(bound: int) -> tuple[int, ...]:
    return tuple(small_prime_sieve(bound + 1))


def _is_pow2(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def _run(
    n: int,
    variant: str,
    method: str,
    sieve_bound: int,
    seed: int,
    skip_step1: bool,
    params_override: LucasParams | None,
) -> PipelineReport:
    if n < 2:
        raise ValueError("primality testing requires n >= 2")
    steps: list[StepOutcome] = []

    def done(
        verdict: str,
        params: LucasParams | None = None,
        certificate: CompositeCertificate | None = None,
        step5_informative: bool | None = None,
    ) -> PipelineReport:
        return PipelineReport(
            n, variant, verdict, tuple(steps), params, certificate, step5_informative
        )

    if n == 2:
        steps.append(StepOutcome("parity", True, {"note": "2 is prime"}))
        return done(VERDICT_PROBABLE_PRIME)
    if n % 2 == 0:
        steps.append(StepOutcome("parity", False, {"factor": 2}))
        return done(
            VERDICT_COMPOSITE,
            certificate=CompositeCertificate(KIND_SMALL_FACTOR, n, {"factor": 2}),
        )

    if sieve_bound >= 2:
        for p in _presieve_primes(sieve_bound):
            if p * p > n:
                break
            if n % p == 0:
                steps.append(StepOutcome("presieve", False, {"factor": p}))
                return done(
                    VERDICT_COMPOSITE,
                    certificate=CompositeCertificate(KIND_SMALL_FACTOR, n, {"factor": p}),
                )
        if n <= sieve_bound:
            # survived trial division by every p <= sqrt(n): n is prime
            steps.append(StepOutcome("presieve", True, {"note": "below sieve bound"}))
            return done(VERDICT_PROBABLE_PRIME)
        steps.append(StepOutcome("presieve", True, {}))

    if skip_step1:
        steps.append(StepOutcome("sprp-2", True, {"skipped": True}))
    else:
        c = is_sprp(n, 2)
        steps.append(StepOutcome("sprp-2", c.is_probable_prime, {"base": 2}))
        if not c.is_probable_prime:
            return done(VERDICT_COMPOSITE, certificate=c.certificate)

    if params_override is not None:
        if jacobi(params_override.d, n) != -1:
            steps.append(StepOutcome("select", False, {"reason": "jacobi(D,n) != -1"}))
            return done(VERDICT_ERROR)
        params = params_override
        steps.append(StepOutcome("select", True, {"params": params.to_dict()}))
    else:
        outcome = select_params(n, method, seed)
        if outcome.is_composite:
            steps.append(
                StepOutcome("select", False, {"certificate": outcome.certificate.to_dict()})
            )
            return done(VERDICT_COMPOSITE, certificate=outcome.certificate)
        if outcome.exhausted:
            steps.append(StepOutcome("select", False, {"reason": "search exhausted"}))
            return done(VERDICT_ERROR)
        params = outcome.params
        steps.append(StepOutcome("select", True, {"params": params.to_dict()}))

    strong = is_slprp(n, params)
    steps.append(
        StepOutcome("slprp", strong.classification.is_probable_prime, {})
    )
    if not strong.classification.is_probable_prime:
        return done(VERDICT_COMPOSITE, params=params, certificate=strong.classification.certificate)

    informative = not _is_pow2(abs(params.q))
    if variant == "original":
        return done(VERDICT_PROBABLE_PRIME, params=params)

    vtest = is_vprp(n, params, strong.triple)
    steps.append(
        StepOutcome(
            "vprp", vtest.is_probable_prime, {"v": strong.triple.v, "expected": 2 * params.q % n}
        )
    )
    if not vtest.is_probable_prime:
        return done(
            VERDICT_COMPOSITE, params=params, certificate=vtest.certificate,
            step5_informative=informative,
        )

    euler = euler_q_check(n, params, strong.q_half)
    steps.append(
        StepOutcome(
            "euler-q",
            euler.is_probable_prime,
            {"q_half": strong.q_half, "informative": informative},
        )
    )
    if not euler.is_probable_prime:
        return done(
            VERDICT_COMPOSITE, params=params, certificate=euler.certificate,
            step5_informative=informative,
        )
    return done(VERDICT_PROBABLE_PRIME, params=params, step5_informative=informative)


def bpsw_original(
    n: int,
    *,
    method: str = "A*",
    sieve_bound: int = DEFAULT_SIEVE_BOUND,
    seed: int = 0,
    skip_step1: bool = False,
    params_override: LucasParams | None = None,
) -> PipelineReport:
    """Three-step test: base-2 strong Fermat, selection, strong Lucas."""
    return _run(n, "original", method, sieve_bound, seed, skip_step1, params_override)


def bpsw_enhanced(
    n: int,
    *,
    method: str = "A*",
    sieve_bound: int = DEFAULT_SIEVE_BOUND,
    seed: int = 0,
    skip_step1: bool = False,
    params_override: LucasParams | None = None,
) -> PipelineReport:
    """Five-step test: the original plus the V-test and the Euler-Q condition."""
    return _run(n, "enhanced", method, sieve_bound, seed, skip_step1, params_override)


def is_probable_prime(n: int, *, variant: str = "enhanced", method: str = "A*") -> bool:
    """Convenience wrapper returning a bare boolean verdict."""
    if variant == "enhanced":
        return bpsw_enhanced(n, method=method).is_probable_prime
    if variant == "original":
        return bpsw_original(n, method=method).is_probable_prime
    raise ValueError(f"unknown variant: {variant!r}")


# ---------------------------------------------------------------------------
# Constructions: the 2**k parameter family and the quadratic-residue residues.


def theorem1_params(k: int, n: int | None = None) -> LucasParams:
    """Params P = 2**k, Q = 2**(2k-1), D = -4**k that defeat steps 3-5.

    For any strong base-2 pseudoprime n == 3 (mod 4) these params make n pass
    the strong Lucas condition, the V-test, and the Euler-Q condition
    simultaneously.  k = 0 means Q = 1/2, which only exists per modulus:
    pass n and get Q = (n+1)/2, D = 1 - 2*(n+1) (so D == -1 mod n).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        if n is None:
            raise ValueError("k = 0 params are per-modulus; pass n")
        if n <= 1 or n % 2 == 0:
            raise ValueError("modulus must be odd and >= 3")
        q = (n + 1) // 2  # the inverse of 2 mod n
        return LucasParams(1 - 4 * q, 1, q, "theorem1")
    return LucasParams(-(4**k), 2**k, 2 ** (2 * k - 1), "theorem1")


@dataclass(frozen=True)
class Theorem1Report:
    """Outcome of checking the construction's promise on one (n, k)."""

    n: int
    k: int
    is_spsp2: bool
    n_mod_4: int
    hypotheses_hold: bool
    slprp: bool | None = None
    vprp: bool | None = None
    euler_q: bool | None = None

    @property
    def conclusion_holds(self) -> bool | None:
        if not self.hypotheses_hold:
            return None
        return bool(self.slprp and self.vprp and self.euler_q)


def verify_theorem1(n: int, k: int) -> Theorem1Report:
    """Check that a strong base-2 pseudoprime n == 3 (mod 4) passes steps 3-5
    with the 2**k family params; hypotheses are checked, not assumed."""
    if n <= 1 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")
    spsp2 = is_sprp(n, 2).is_probable_prime and not _is_probable_prime_oracle(n)
    hypotheses = spsp2 and n % 4 == 3
    if not hypotheses:
        return Theorem1Report(n, k, spsp2, n % 4, False)
    params = theorem1_params(k, n)
    strong = is_slprp(n, params)
    if not strong.classification.is_probable_prime:
        return Theorem1Report(n, k, spsp2, 3, True, False, False, False)
    vt = is_vprp(n, params, strong.triple)
    eq = euler_q_check(n, params, strong.q_half)
    return Theorem1Report(
        n, k, spsp2, 3, True, True, vt.is_probable_prime, eq.is_probable_prime
    )


def _is_probable_prime_oracle(n: int) -> bool:
    """Trial division for small n, multi-base strong tests above; used only
    to check hypotheses of the constructions, never by the pipelines."""
    if n < 2:
        return False
    for p in _presieve_primes(DEFAULT_SIEVE_BOUND):
        if p * p > n:
            return True
        if n % p == 0:
            return n == p
    # Deterministic strong-test base set for n < 3.3e24.
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n == a:
            return True
        if not is_sprp(n, a).is_probable_prime:
            return False
    return True


def lemma_qr_residue(r: int) -> int:
    """A residue a with a == 3 (mod 4) such that primes p == a (mod 4r)
    have r as a quadratic residue: jacobi(r, p) = +1.

    Write r = t * 2**s with t odd; a = 1 + 2t when t == 1 (mod 4), else
    a = 4t - 1; add 4t when s is odd.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    t, s = split_twos(r)
    a = 1 + 2 * t if t % 4 == 1 else 4 * t - 1
    if s % 2 == 1:
        a += 4 * t
    return a


def psp_lpsp_vpsp_witness(n: int, limit: int = 10_000) -> tuple[int, int] | None:
    """Smallest (P, Q), 1 <= P, Q < n, making composite n a base-2 Fermat
    pseudoprime, a Lucas pseudoprime, and a V-pseudoprime at once.

    Exhaustive over the (P, Q) grid in lexicographic order; None when no pair
    works (e.g. when n is not a base-2 Fermat pseudoprime at all, since that
    condition does not involve P or Q).
    """
    if n <= 1 or n % 2 == 0:
        raise ValueError("witness search requires odd n >= 3")
    if n > limit:
        raise ValueError(
            f"witness search is exhaustive over an (n-1)**2 grid; refusing n > {limit}"
        )
    if _is_probable_prime_oracle(n):
        raise ValueError("witness search expects a composite n")
    if mod_pow(2, n - 1, n) != 1:
        return None
    from . import _kernel

    return _kernel.witness_search(n)


# ---------------------------------------------------------------------------
# Certificate re-verification.


def verify_certificate(cert: CompositeCertificate) -> bool:
    """Re-check a certificate from scratch; True iff it proves n composite."""
    n = cert.n
    ev = cert.evidence
    kind = cert.kind
    if kind in (KIND_SMALL_FACTOR, KIND_ZERO_JACOBI):
        f = ev["factor"]
        return 1 < f < n and n % f == 0
    if kind == KIND_PERFECT_SQUARE:
        root = ev["root"]
        return 1 < root < n and root * root == n
    if kind == KIND_FAILED_FERMAT:
        a = ev["base"]
        return gcd(a, n) == 1 and mod_pow(a, n - 1, n) != 1
    if kind == KIND_FAILED_EULER_CRITERION:
        a = ev["base"]
        if gcd(a, n) != 1:
            return False
        return mod_pow(a, (n - 1) // 2, n) != jacobi(a, n) % n
    if kind == KIND_FAILED_SPRP:
        a = ev["base"]
        if gcd(a, n) != 1 or n % 2 == 0:
            return False
        d, s = split_twos(n - 1)
        x = mod_pow(a, d, n)
        if x == 1 or x == n - 1:
            return False
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True
    if kind in (KIND_FAILED_LPRP, KIND_FAILED_SLPRP, KIND_FAILED_VPRP, KIND_FAILED_EULER_Q):
        params = LucasParams.from_dict(ev["params"])
        if jacobi(params.d, n) != -1 or gcd(params.q, n) != 1:
            return False
        if kind == KIND_FAILED_LPRP:
            return lucas_ladder(n, params, n + 1).u != 0
        if kind == KIND_FAILED_SLPRP:
            d, s = split_twos(n + 1)
            t = lucas_ladder(n, params, d)
            if t.u == 0 or t.v == 0:
                return False
            u, v, qk = t.u, t.v, t.qk
            for _ in range(s - 1):
                u, v, qk = u * v % n, (v * v - 2 * qk) % n, qk * qk % n
                if v == 0:
                    return False
            return True
        triple, q_half = ladder_with_half(n, params)
        if kind == KIND_FAILED_VPRP:
            return triple.v != 2 * params.q % n
        return q_half != params.q * jacobi(params.q, n) % n
    raise ValueError(f"unknown certificate kind: {kind!r}")
