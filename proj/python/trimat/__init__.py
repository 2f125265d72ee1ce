"""Exact Tribonacci / Tribonacci-Lucas sequences, 3x3 matrix sequences,
generating functions, summation formulas, and an identity checker.

All integer results are exact Python ints, rationals are
fractions.Fraction; the numeric Binet helpers return floats evaluated at a
configurable binary precision.
"""

from ._trimat import (
    __version__,
    BinetRoundingError,
    IdentityParseError,
    SingularMatrixError,
    UnknownSequenceError,
    ZeroDenominatorError,
    binet_k,
    binet_t,
    binet_t_rounded,
    check_identity,
    conjecture_probe,
    consecutive_ratio,
    corpus,
    eval_spec,
    gf_coefficients,
    k_matrix,
    kk_product_expansion,
    roots,
    sequence_slice,
    spec_slice,
    sum_matrix,
    sum_scalar,
    t_matrix,
    tribonacci,
    tribonacci_lucas,
)

__all__ = [
    "BinetRoundingError",
    "IdentityParseError",
    "SingularMatrixError",
    "UnknownSequenceError",
    "ZeroDenominatorError",
    "binet_k",
    "binet_t",
    "binet_t_rounded",
    "check_identity",
    "conjecture_probe",
    "consecutive_ratio",
    "corpus",
    "eval_spec",
    "gf_coefficients",
    "k_matrix",
    "kk_product_expansion",
    "roots",
    "sequence_slice",
    "spec_slice",
    "sum_matrix",
    "sum_scalar",
    "t_matrix",
    "tribonacci",
    "tribonacci_lucas",
]
