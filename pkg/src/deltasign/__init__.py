"""deltasign: exact sign of the zeros-minus-ones gap of boolean polynomials.

Public API is re-exported here; submodules stay importable directly.
"""

from .errors import (
    CertificateError,
    DegreeError,
    DeltasignError,
    EnumerationTooLargeError,
    ParseError,
    PolynomialTooLargeError,
    SynthesisBudgetError,
)
from .f2poly import (
    BoolPoly,
    LinearFunctional,
    delta_bruteforce,
    disjoint_sum,
    format_anf,
    format_anf_file,
    negate,
    parse_anf,
    restrict,
    subspace_embed,
)

__version__ = "0.1.0"

__all__ = [
    "BoolPoly",
    "LinearFunctional",
    "delta_bruteforce",
    "disjoint_sum",
    "format_anf",
    "format_anf_file",
    "negate",
    "parse_anf",
    "restrict",
    "subspace_embed",
    "DeltasignError",
    "ParseError",
    "PolynomialTooLargeError",
    "DegreeError",
    "SynthesisBudgetError",
    "EnumerationTooLargeError",
    "CertificateError",
    "__version__",
]
