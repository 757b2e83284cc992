"""Exact rational helpers: parsing, formatting, certified square-root bounds.

All rationals are `fractions.Fraction`, which already guarantees lowest
terms and a positive denominator.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" (base 10, optional leading minus on p only)."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"malformed rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in rational: {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sqrt_lower(q: Fraction, prec_bits: int = 32) -> Fraction:
    """A rational lower bound on sqrt(q), within 2**-prec_bits of it.

    Requires q >= 0.
    """
    if q < 0:
        raise ValueError("sqrt of a negative rational")
    if q == 0:
        return Fraction(0)
    scale = 1 << prec_bits
    r = math.isqrt((q.numerator * scale * scale) // q.denominator)
    return Fraction(r, scale)


def sqrt_upper(q: Fraction, prec_bits: int = 32) -> Fraction:
    """A rational upper bound on sqrt(q), within 2**-prec_bits of it."""
    if q < 0:
        raise ValueError("sqrt of a negative rational")
    if q == 0:
        return Fraction(0)
    scale = 1 << prec_bits
    n = -((-q.numerator * scale * scale) // q.denominator)  # ceil division
    r = math.isqrt(n)
    if r * r < n:
        r += 1
    return Fraction(r, scale)
