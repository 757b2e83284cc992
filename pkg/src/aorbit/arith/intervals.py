"""Exact interval and complex-box arithmetic over the rationals.

Endpoints are Fractions, so +, -, * are exact: no outward rounding is
needed except in `sqrt`, which returns certified rational bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rationals import sqrt_lower, sqrt_upper

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval: [{self.lo}, {self.hi}]")

    @staticmethod
    def point(q: Fraction) -> "Interval":
        return Interval(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, q: Fraction) -> bool:
        return self.lo <= q <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Interval") -> "Interval":
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other: "Interval") -> "Interval":
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    def scale(self, q: Fraction) -> "Interval":
        if q >= 0:
            return Interval(self.lo * q, self.hi * q)
        return Interval(self.hi * q, self.lo * q)

    def shift(self, q: Fraction) -> "Interval":
        return Interval(self.lo + q, self.hi + q)

    def recip(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def square(self) -> "Interval":
        """Interval of x*x; tighter than self * self when 0 is inside."""
        if self.lo >= 0:
            return Interval(self.lo * self.lo, self.hi * self.hi)
        if self.hi <= 0:
            return Interval(self.hi * self.hi, self.lo * self.lo)
        return Interval(_ZERO, max(self.lo * self.lo, self.hi * self.hi))

    def abs(self) -> "Interval":
        """Interval of |x|."""
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(_ZERO, max(-self.lo, self.hi))

    def sqrt(self, prec_bits: int = 32) -> "Interval":
        """Certified enclosure of sqrt over the interval; requires lo >= 0."""
        return Interval(sqrt_lower(self.lo, prec_bits), sqrt_upper(self.hi, prec_bits))

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))


@dataclass(frozen=True)
class ComplexBox:
    """Axis-aligned rectangle in the complex plane with rational corners."""

    re: Interval
    im: Interval

    @staticmethod
    def point(re: Fraction, im: Fraction = _ZERO) -> "ComplexBox":
        return ComplexBox(Interval.point(re), Interval.point(im))

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    def contains(self, re: Fraction, im: Fraction = _ZERO) -> bool:
        return self.re.contains(re) and self.im.contains(im)

    def intersects(self, other: "ComplexBox") -> bool:
        return self.re.intersects(other.re) and self.im.intersects(other.im)

    def __add__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ComplexBox":
        return ComplexBox(-self.re, -self.im)

    def __mul__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conj(self) -> "ComplexBox":
        return ComplexBox(self.re, -self.im)

    def scale(self, q: Fraction) -> "ComplexBox":
        return ComplexBox(self.re.scale(q), self.im.scale(q))

    def abs_sq(self) -> Interval:
        """Enclosure of |z|^2."""
        return self.re.square() + self.im.square()

    def abs(self, prec_bits: int = 32) -> Interval:
        """Certified enclosure of |z|."""
        return self.abs_sq().sqrt(prec_bits)

    def recip(self) -> "ComplexBox":
        """Enclosure of 1/z; requires the box to exclude 0."""
        d = self.abs_sq()
        inv = d.recip()
        return ComplexBox(self.re * inv, (-self.im) * inv)

    def is_real_line(self) -> bool:
        return self.im.lo == 0 and self.im.hi == 0
