"""Exact rational, interval, polynomial, algebraic-number, and number-field
arithmetic with certified comparisons."""

from .algebraic import (
    EQUAL,
    GREATER,
    LESS,
    AlgebraicNumber,
    algebraic_from_field_rep,
    cmp_modulus_one,
    factor_rational_poly,
    is_root_of_unity,
    isolate_roots,
    ratio_min_poly,
    refine,
)
from .intervals import ComplexBox, Interval
from .numberfield import NFElement, NumberField
from .polynomials import Polynomial, poly_gcd, poly_pow, poly_pow_mod, poly_xgcd
from .rationals import format_rational, parse_rational, sqrt_lower, sqrt_upper

__all__ = [
    "EQUAL",
    "GREATER",
    "LESS",
    "AlgebraicNumber",
    "ComplexBox",
    "Interval",
    "NFElement",
    "NumberField",
    "Polynomial",
    "algebraic_from_field_rep",
    "cmp_modulus_one",
    "factor_rational_poly",
    "format_rational",
    "is_root_of_unity",
    "isolate_roots",
    "parse_rational",
    "poly_gcd",
    "poly_pow",
    "poly_pow_mod",
    "poly_xgcd",
    "ratio_min_poly",
    "refine",
    "sqrt_lower",
    "sqrt_upper",
]
