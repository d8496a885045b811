"""Baillie-PSW primality testing with Lucas-parameter selection and censuses.

The public surface:

- :func:`is_probable_prime` / :func:`bpsw_original` / :func:`bpsw_enhanced`
  run the combined test on one integer and return a full step-by-step report.
- :func:`select_params` picks Lucas parameters by any of the published
  discriminant-search methods (A, A*, B, B*, C, D) or a seeded random one (R).
- :mod:`bpsw.census` scans ranges for Fermat/Lucas pseudoprimes of every kind
  the pipeline tests, with checkpointing and cumulative count tables.
- ``BACKEND`` names the classification kernel in use ("cython" when the
  compiled extension imported, else "python").
"""

from ._kernel import BACKEND, KERNEL_LIMIT, classify_block, classify_one
from .certificates import Classification, CompositeCertificate
from .fermat import is_epsp_condition, is_prp, is_sprp
from .lucas import (
    LucasParams,
    LucasTriple,
    euler_q_check,
    is_lprp,
    is_slprp,
    is_vprp,
    lucas_ladder,
    lucas_naive,
)
from .params import METHOD_NAMES, SelectionOutcome, select_params
from .pipeline import (
    PipelineReport,
    Theorem1Report,
    bpsw_enhanced,
    bpsw_original,
    is_probable_prime,
    lemma_qr_residue,
    psp_lpsp_vpsp_witness,
    theorem1_params,
    verify_certificate,
    verify_theorem1,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "KERNEL_LIMIT",
    "Classification",
    "CompositeCertificate",
    "LucasParams",
    "LucasTriple",
    "METHOD_NAMES",
    "PipelineReport",
    "SelectionOutcome",
    "Theorem1Report",
    "bpsw_enhanced",
    "bpsw_original",
    "classify_block",
    "classify_one",
    "euler_q_check",
    "is_epsp_condition",
    "is_lprp",
    "is_probable_prime",
    "is_prp",
    "is_slprp",
    "is_sprp",
    "is_vprp",
    "lemma_qr_residue",
    "lucas_ladder",
    "lucas_naive",
    "psp_lpsp_vpsp_witness",
    "select_params",
    "theorem1_params",
    "verify_certificate",
    "verify_theorem1",
    "__version__",
]
