"""Exact Drazin, strongly Drazin and Hirano inverses of matrices over Q(i),
anti-triangular block constructions and seeded theorem checking."""

__version__ = "0.1.0"

from .antitri import (  # noqa: E402
    REGISTRY,
    PeirceBlocks,
    TheoremReport,
    build_anti_triangular,
    check_theorem,
    peirce_split,
)
from .exactcore import Matrix, Polynomial, Scalar  # noqa: E402
from .geninv import (  # noqa: E402
    DrazinCertificate,
    HiranoCertificate,
    SpectrumSummary,
    StronglyDrazinCertificate,
    cline_hirano,
    drazin,
    hirano,
    hirano_sum_225,
    hirano_sum_orthogonal,
    is_hirano,
    spectrum_summary,
    strongly_drazin,
)

__all__ = [
    "REGISTRY",
    "DrazinCertificate",
    "HiranoCertificate",
    "Matrix",
    "PeirceBlocks",
    "Polynomial",
    "Scalar",
    "SpectrumSummary",
    "StronglyDrazinCertificate",
    "TheoremReport",
    "build_anti_triangular",
    "check_theorem",
    "cline_hirano",
    "drazin",
    "hirano",
    "hirano_sum_225",
    "hirano_sum_orthogonal",
    "is_hirano",
    "peirce_split",
    "spectrum_summary",
    "strongly_drazin",
]
