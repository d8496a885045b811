"""Composite certificates and the classification result type.

A composite verdict anywhere in the package is always backed by a
certificate that can be re-checked from scratch (see
``bpsw.pipeline.verify_certificate``).  Certificates are plain data: every
field is JSON-serializable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

# Kinds emitted by the 3-step/5-step pipelines.
KIND_SMALL_FACTOR = "small-factor"
KIND_FAILED_SPRP = "failed-sprp"
KIND_ZERO_JACOBI = "zero-jacobi-factor"
KIND_PERFECT_SQUARE = "perfect-square"
KIND_FAILED_SLPRP = "failed-slprp"
KIND_FAILED_VPRP = "failed-vprp"
KIND_FAILED_EULER_Q = "failed-euler-q"
# Kinds emitted only by standalone classifiers.
KIND_FAILED_FERMAT = "failed-fermat"
KIND_FAILED_EULER_CRITERION = "failed-euler-criterion"
KIND_FAILED_LPRP = "failed-lprp"

CERTIFICATE_KINDS = (
    KIND_SMALL_FACTOR,
    KIND_FAILED_SPRP,
    KIND_ZERO_JACOBI,
    KIND_PERFECT_SQUARE,
    KIND_FAILED_SLPRP,
    KIND_FAILED_VPRP,
    KIND_FAILED_EULER_Q,
    KIND_FAILED_FERMAT,
    KIND_FAILED_EULER_CRITERION,
    KIND_FAILED_LPRP,
)


@dataclass(frozen=True)
class CompositeCertificate:
    """Machine-checkable evidence that n is composite.

    ``evidence`` holds kind-specific fields (a factor, a residue chain, the
    Lucas params used, ...) with string keys and int/list values only.
    """

    kind: str
    n: int
    evidence: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in CERTIFICATE_KINDS:
            raise ValueError(f"unknown certificate kind: {self.kind!r}")

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "n": self.n, "evidence": dict(self.evidence)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CompositeCertificate":
        return cls(kind=data["kind"], n=data["n"], evidence=dict(data["evidence"]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CompositeCertificate):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash((self.kind, self.n))


@dataclass(frozen=True)
class Classification:
    """Outcome of a single probable-prime condition on one n.

    is_probable_prime=True means n passed the condition (it may still be
    composite -- that is what pseudoprimes are); False always comes with a
    certificate.
    """

    is_probable_prime: bool
    certificate: CompositeCertificate | None = None

    def __post_init__(self) -> None:
        if not self.is_probable_prime and self.certificate is None:
            raise ValueError("composite classification requires a certificate")
        if self.is_probable_prime and self.certificate is not None:
            raise ValueError("probable-prime classification cannot carry a certificate")

    def to_dict(self) -> dict[str, Any]:
        return {
            "is_probable_prime": self.is_probable_prime,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Classification":
        cert = data.get("certificate")
        return cls(
            is_probable_prime=data["is_probable_prime"],
            certificate=None if cert is None else CompositeCertificate.from_dict(cert),
        )


def probable_prime() -> Classification:
    return Classification(True)


def composite(kind: str, n: int, **evidence: Any) -> Classification:
    return Classification(False, CompositeCertificate(kind, n, evidence))
