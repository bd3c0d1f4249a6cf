"""Exact arithmetic foundation: Laurent polynomials, matrices, roots."""

from fractions import Fraction

from .laurent import LaurentPolynomial, exact_quotient, poly_divmod
from .matrix import (
    Inertia,
    as_matrix,
    block_diag,
    det,
    identity,
    inertia,
    inverse,
    mat_mul,
    matrix_power,
    transpose,
)
from .parse import parse_poly
from .poly import (
    cyclotomic,
    is_perfect_square,
    is_symmetric,
    lp_gcd,
    monic,
    normalize,
    squarefree_decomposition,
    units_equal,
)
from .quadratic import QuadraticNumber
from .realroots import AlgebraicReal, isolate_real_roots
from .roots import (
    QuadraticRoot,
    RationalRoot,
    RootDescriptor,
    RootOfUnity,
    Unsupported,
    classify_roots,
    root_count,
)

Rational = Fraction

__all__ = [
    "AlgebraicReal", "Fraction", "Inertia", "LaurentPolynomial", "QuadraticNumber",
    "QuadraticRoot", "Rational", "RationalRoot", "RootDescriptor", "RootOfUnity",
    "Unsupported", "as_matrix", "block_diag", "classify_roots", "cyclotomic", "det",
    "exact_quotient", "identity", "inertia", "inverse", "is_perfect_square",
    "is_symmetric", "isolate_real_roots", "lp_gcd", "mat_mul", "matrix_power", "monic",
    "normalize", "parse_poly", "poly_divmod", "root_count", "squarefree_decomposition",
    "transpose", "units_equal",
]
