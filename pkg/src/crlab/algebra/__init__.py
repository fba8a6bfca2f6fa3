"""Exact algebra: Gaussian rationals, parameter polynomials and sparse polynomials."""

from crlab.algebra.gaussian import (
    ExactDivisionError,
    GaussianRational,
    I,
    ONE,
    ZERO,
    scalar_arith,
    to_fraction,
)
from crlab.algebra.params import PARAMETERS, AffineExponent, ParamPoly, exponent_add
from crlab.algebra.polynomial import (
    Polynomial,
    SymbolTable,
    UnknownSymbolError,
    poly_normalize,
    rational_is_zero,
)

__all__ = [
    "PARAMETERS",
    "AffineExponent",
    "ExactDivisionError",
    "GaussianRational",
    "I",
    "ONE",
    "ParamPoly",
    "Polynomial",
    "SymbolTable",
    "UnknownSymbolError",
    "ZERO",
    "exponent_add",
    "poly_normalize",
    "rational_is_zero",
    "scalar_arith",
    "to_fraction",
]
