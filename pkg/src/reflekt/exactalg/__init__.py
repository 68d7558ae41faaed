"""Exact arithmetic: quadratic fields, certified intervals, inertia, SNF."""

from .intervals import (
    DEFAULT_PRECISION_BITS,
    BigFloatInterval,
    IntervalContext,
    mpf_to_fraction,
)
from .quadfield import (
    MinimalPolynomial,
    QuadExt,
    Rational,
    golden_ratio,
    minimal_polynomial,
    quad_sign,
)
from .snf import (
    SmithDecomposition,
    integer_det,
    matmul_int,
    smith_decomposition,
    smith_normal_form,
)
from .symmatrix import SignatureCert, SymMatrix, exact_rank, signature

__all__ = [
    "DEFAULT_PRECISION_BITS",
    "BigFloatInterval",
    "IntervalContext",
    "MinimalPolynomial",
    "QuadExt",
    "Rational",
    "SignatureCert",
    "SmithDecomposition",
    "SymMatrix",
    "exact_rank",
    "golden_ratio",
    "integer_det",
    "matmul_int",
    "minimal_polynomial",
    "mpf_to_fraction",
    "quad_sign",
    "signature",
    "smith_decomposition",
    "smith_normal_form",
]
