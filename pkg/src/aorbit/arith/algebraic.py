"""Exact algebraic numbers: irreducible minimal polynomial + isolating box.

Representation: a monic irreducible polynomial over Q together with a
root index in sympy's CRootOf ordering.  The isolating box is certified
(sympy's root isolation) and can be refined to any width without changing
which root it isolates.

Equality decisions (a == b, |a| == 1, a**n == 1) are settled exactly at
the minimal-polynomial level; strict inequalities are settled by interval
refinement, which terminates because the compared values are distinct.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import sympy
from sympy.polys.rootoftools import CRootOf

from .intervals import ComplexBox, Interval
from .polynomials import Polynomial, poly_pow_mod

_X = sympy.Symbol("x")
_Y = sympy.Symbol("y")

_ZERO = Fraction(0)
_ONE = Fraction(1)


def to_sympy_poly(p: Polynomial, var=_X) -> sympy.Poly:
    return sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)],
        var,
    )


def from_sympy_poly(p: sympy.Poly) -> Polynomial:
    coeffs = [Fraction(c.p, c.q) for c in p.all_coeffs()]
    return Polynomial.from_list(list(reversed(coeffs)))


def _frac(q) -> Fraction:
    """gmpy2.mpq / sympy Rational -> Fraction."""
    return Fraction(int(q.numerator), int(q.denominator))


def factor_rational_poly(p: Polynomial) -> List[Tuple[Polynomial, int]]:
    """Irreducible monic factors over Q with multiplicities."""
    if p.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    _, factors = to_sympy_poly(p).factor_list()
    return [(from_sympy_poly(f).monic(), int(m)) for f, m in factors]


def _interval_to_box(iv) -> ComplexBox:
    if hasattr(iv, "ax"):
        return ComplexBox(
            Interval(_frac(iv.ax), _frac(iv.bx)),
            Interval(_frac(iv.ay), _frac(iv.by)),
        )
    return ComplexBox(Interval(_frac(iv.a), _frac(iv.b)), Interval.point(_ZERO))


class AlgebraicNumber:
    """A single root of an irreducible rational polynomial."""

    __slots__ = ("min_poly", "root_index", "_exact", "_interval", "_box", "_scale")

    def __init__(self, min_poly: Polynomial, root_index: int):
        min_poly = min_poly.monic()
        if min_poly.degree < 1:
            raise ValueError("minimal polynomial must have degree >= 1")
        self.min_poly = min_poly
        self.root_index = root_index
        self._scale = _ONE
        if min_poly.degree == 1:
            val = -min_poly.coeffs[0]
            self._exact: Optional[Tuple[Fraction, Fraction]] = (val, _ZERO)
            self._interval = None
            self._box: ComplexBox = ComplexBox.point(val)
            return
        root = CRootOf(to_sympy_poly(min_poly), root_index)
        if not isinstance(root, CRootOf):
            # sympy may pre-scale the variable (c * CRootOf) or short-circuit
            # gaussian-rational quadratics to an explicit value
            if (
                root.is_Mul
                and len(root.args) == 2
                and root.args[0].is_Rational
                and isinstance(root.args[1], CRootOf)
            ):
                self._scale = _frac(root.args[0])
                root = root.args[1]
            else:
                re_part, im_part = root.as_real_imag()
                if not (re_part.is_Rational and im_part.is_Rational):
                    raise RuntimeError(f"unexpected explicit root form: {root}")
                self._exact = (_frac(re_part), _frac(im_part))
                self._interval = None
                self._box = ComplexBox.point(self._exact[0], self._exact[1])
                return
        self._exact = None
        self._interval = root._get_interval()
        self._box = _interval_to_box(self._interval).scale(self._scale)

    # -- construction -------------------------------------------------

    @staticmethod
    def from_rational(q) -> "AlgebraicNumber":
        q = Fraction(q)
        return AlgebraicNumber(Polynomial.of(-q, 1), 0)

    @staticmethod
    def from_gaussian(re, im) -> "AlgebraicNumber":
        """The gaussian rational re + im*i."""
        re, im = Fraction(re), Fraction(im)
        if im == 0:
            return AlgebraicNumber.from_rational(re)
        # x^2 - 2*re*x + (re^2 + im^2), irreducible since im != 0
        poly = Polynomial.of(re * re + im * im, -2 * re, 1)
        return _select_root(
            [poly], lambda w: ComplexBox.point(re, im)
        )

    # -- basic queries -------------------------------------------------

    @property
    def _rational(self) -> Optional[Fraction]:
        """Exact value when the number is a rational (real) point."""
        if self._exact is not None and self._exact[1] == 0:
            return self._exact[0]
        return None

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    @property
    def is_rational(self) -> bool:
        return self._rational is not None

    def as_fraction(self) -> Fraction:
        if self._rational is None:
            raise ValueError("not a rational number")
        return self._rational

    @property
    def is_zero(self) -> bool:
        return self._rational == 0

    @property
    def isolating_box(self) -> ComplexBox:
        return self._box

    def refine(self, width: Fraction) -> ComplexBox:
        """Shrink the isolating box to at most `width`; same root throughout."""
        if self._exact is not None:
            return self._box
        while self._box.width > width:
            self._interval = self._interval.refine()
            self._box = _interval_to_box(self._interval).scale(self._scale)
        return self._box

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        return (
            self.min_poly.coeffs == other.min_poly.coeffs
            and self.root_index == other.root_index
        )

    def __hash__(self) -> int:
        return hash((self.min_poly.coeffs, self.root_index))

    def __repr__(self) -> str:
        if self._rational is not None:
            return f"AlgebraicNumber({self._rational})"
        return f"AlgebraicNumber({self.min_poly}, root {self.root_index})"

    # -- arithmetic ----------------------------------------------------

    def __neg__(self) -> "AlgebraicNumber":
        if self._rational is not None:
            return AlgebraicNumber.from_rational(-self._rational)
        p = self.min_poly
        neg = Polynomial.from_list(
            [(-1) ** i * c for i, c in enumerate(p.coeffs)]
        ).monic()
        return _select_root([neg], lambda w: -self.refine(w))

    def conj(self) -> "AlgebraicNumber":
        if self._rational is not None:
            return self
        return _select_root([self.min_poly], lambda w: self.refine(w).conj())

    def inverse(self) -> "AlgebraicNumber":
        if self._rational is not None:
            if self._rational == 0:
                raise ZeroDivisionError("inverse of zero")
            return AlgebraicNumber.from_rational(1 / self._rational)
        rev = Polynomial.from_list(list(reversed(self.min_poly.coeffs))).monic()
        return _select_root([rev], lambda w: _refine_recip(self, w))

    def shift(self, q: Fraction) -> "AlgebraicNumber":
        """self + q for rational q, without factoring."""
        if q == 0:
            return self
        if self._rational is not None:
            return AlgebraicNumber.from_rational(self._rational + q)
        shifted = _compose_linear(self.min_poly, _ONE, -q).monic()
        return _select_root(
            [shifted], lambda w: self.refine(w) + ComplexBox.point(q)
        )

    def scale(self, q: Fraction) -> "AlgebraicNumber":
        """self * q for rational q."""
        if q == 0:
            return AlgebraicNumber.from_rational(0)
        if self._rational is not None:
            return AlgebraicNumber.from_rational(self._rational * q)
        scaled = Polynomial.from_list(
            [c / q**i for i, c in enumerate(self.min_poly.coeffs)]
        ).monic()
        return _select_root([scaled], lambda w: self.refine(w).scale(q))

    def __add__(self, other: "AlgebraicNumber") -> "AlgebraicNumber":
        if other._rational is not None:
            return self.shift(other._rational)
        if self._rational is not None:
            return other.shift(self._rational)
        p = to_sympy_poly(self.min_poly, _Y)
        q_shift = to_sympy_poly(other.min_poly).as_expr().subs(_X, _X - _Y)
        res = sympy.Poly(sympy.resultant(p.as_expr(), q_shift, _Y), _X)
        return _select_root(
            [f for f, _ in factor_rational_poly(from_sympy_poly(res))],
            lambda w: self.refine(w) + other.refine(w),
        )

    def __sub__(self, other: "AlgebraicNumber") -> "AlgebraicNumber":
        return self + (-other)

    def __mul__(self, other: "AlgebraicNumber") -> "AlgebraicNumber":
        if other._rational is not None:
            return self.scale(other._rational)
        if self._rational is not None:
            return other.scale(self._rational)
        p = to_sympy_poly(self.min_poly, _Y)
        m = other.min_poly.degree
        # y^m * q(x/y): vanishes at x = a*b when y = a, q(b) = 0
        q_hom = sum(
            sympy.Rational(c.numerator, c.denominator) * _X**j * _Y ** (m - j)
            for j, c in enumerate(other.min_poly.coeffs)
        )
        res = sympy.Poly(sympy.resultant(p.as_expr(), q_hom, _Y), _X)
        return _select_root(
            [f for f, _ in factor_rational_poly(from_sympy_poly(res))],
            lambda w: self.refine(w) * other.refine(w),
        )

    def __truediv__(self, other: "AlgebraicNumber") -> "AlgebraicNumber":
        return self * other.inverse()

    def pow(self, n: int) -> "AlgebraicNumber":
        """Exact integer power via reduction in Q[x]/(min_poly)."""
        if n < 0:
            return self.inverse().pow(-n)
        if self._rational is not None:
            return AlgebraicNumber.from_rational(self._rational**n)
        rep = poly_pow_mod(Polynomial.x(), n, self.min_poly)
        return algebraic_from_field_rep(self.min_poly, rep, self)

    def abs_sq(self) -> "AlgebraicNumber":
        """|self|^2 = self * conj(self), a real algebraic number."""
        if self._rational is not None:
            return AlgebraicNumber.from_rational(self._rational**2)
        return self * self.conj()

    def equals_one(self) -> bool:
        return self._rational == 1


def _refine_recip(a: AlgebraicNumber, width: Fraction) -> ComplexBox:
    w = width
    while True:
        box = a.refine(w)
        zero_dist = box.abs_sq()
        if zero_dist.lo > 0:
            out = box.recip()
            if out.width <= width:
                return out
        w /= 8


def _compose_linear(p: Polynomial, a: Fraction, b: Fraction) -> Polynomial:
    """p(a*x + b) by Horner over polynomials."""
    lin = Polynomial.of(b, a)
    acc = Polynomial.zero()
    for c in reversed(p.coeffs):
        acc = acc * lin + Polynomial.of(c)
    return acc


def _select_root(
    candidates: Sequence[Polynomial],
    approx: Callable[[Fraction], ComplexBox],
) -> AlgebraicNumber:
    """Pick the unique root among candidate polynomials enclosed by approx.

    `approx(w)` must return a certified enclosure of the target value that
    shrinks to a point as w -> 0.  The target must be a root of exactly one
    candidate polynomial (candidates are irreducible, hence coprime).
    """
    roots: List[AlgebraicNumber] = []
    for poly in candidates:
        for i in range(poly.degree):
            roots.append(AlgebraicNumber(poly, i))
    width = Fraction(1, 4)
    for _ in range(2000):
        value = approx(width)
        tol = max(value.width, width)
        hits = []
        for r in roots:
            # refine the candidate until it either separates from the value
            # box or is at least as tight as the current tolerance
            while r.isolating_box.intersects(value) and r.isolating_box.width > tol:
                if r._exact is not None:
                    break
                r.refine(r.isolating_box.width / 2)
            if r.isolating_box.intersects(value):
                hits.append(r)
        if len(hits) == 1:
            return hits[0]
        roots = hits if hits else roots
        width /= 8
    raise RuntimeError("root selection failed to converge")


def algebraic_from_field_rep(
    f: Polynomial, rep: Polynomial, generator: AlgebraicNumber
) -> AlgebraicNumber:
    """The algebraic number rep(a), where a is the given root of f."""
    if rep.degree <= 0:
        return AlgebraicNumber.from_rational(rep.eval(_ZERO))
    fy = to_sympy_poly(f, _Y)
    gy = to_sympy_poly(rep, _Y)
    res = sympy.Poly(sympy.resultant(fy.as_expr(), _X - gy.as_expr(), _Y), _X)

    def approx(width: Fraction) -> ComplexBox:
        w = width
        while True:
            box = rep.eval_box(generator.refine(w))
            if box.width <= width:
                return box
            w /= 8

    return _select_root(
        [fac for fac, _ in factor_rational_poly(from_sympy_poly(res))], approx
    )


# -- spec-level operations ---------------------------------------------

LESS, EQUAL, GREATER = -1, 0, 1


def isolate_roots(
    p: Polynomial, width: Fraction
) -> List[Tuple[AlgebraicNumber, int]]:
    """All distinct complex roots of p with multiplicities.

    Boxes are pairwise disjoint and have width at most `width`.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no isolated roots")
    out: List[Tuple[AlgebraicNumber, int]] = []
    for factor, mult in factor_rational_poly(p):
        for i in range(factor.degree):
            out.append((AlgebraicNumber(factor, i), mult))
    for root, _ in out:
        root.refine(width)
    # roots are distinct, so refinement eventually separates all boxes
    changed = True
    while changed:
        changed = False
        for i in range(len(out)):
            for j in range(i + 1, len(out)):
                a, b = out[i][0], out[j][0]
                if a.isolating_box.intersects(b.isolating_box):
                    a.refine(a.isolating_box.width / 2)
                    b.refine(b.isolating_box.width / 2)
                    changed = True
    return out


def cmp_modulus_one(a: AlgebraicNumber) -> int:
    """Exact trichotomy of |a| against 1: LESS, EQUAL, or GREATER."""
    if a.is_zero:
        raise ValueError("modulus comparison requires a nonzero number")
    if a._rational is not None:
        m = abs(a._rational)
        return LESS if m < 1 else (EQUAL if m == 1 else GREATER)
    m = a.abs_sq()
    if m.min_poly.coeffs == (Fraction(-1), Fraction(1)):
        return EQUAL
    # |a|^2 != 1 exactly, so refinement separates it from 1
    width = Fraction(1, 4)
    while True:
        box = m.refine(width)
        if box.re.lo > 1:
            return GREATER
        if box.re.hi < 1:
            return LESS
        width /= 8


def _totient(n: int) -> int:
    result = n
    d = 2
    m = n
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def is_root_of_unity(a: AlgebraicNumber) -> Optional[int]:
    """Least n with a**n == 1, or None.

    Candidate orders are the n whose totient equals deg(min_poly); since
    phi(n) >= sqrt(n/2), scanning n <= 2*d^2 + 1 is exhaustive.  Each
    candidate is checked by exact power-and-compare in Q[x]/(min_poly).
    """
    if a.is_zero:
        raise ValueError("zero is not a root of unity candidate")
    if a._rational is not None:
        if a._rational == 1:
            return 1
        if a._rational == -1:
            return 2
        return None
    # minimal polynomials of roots of unity are cyclotomic: integer, monic
    if any(c.denominator != 1 for c in a.min_poly.coeffs):
        return None
    d = a.degree
    one = Polynomial.one()
    x = Polynomial.x()
    for n in range(1, 2 * d * d + 2):
        if _totient(n) != d:
            continue
        if poly_pow_mod(x, n, a.min_poly) == one:
            return n
    return None


def ratio_min_poly(a: AlgebraicNumber, b: AlgebraicNumber) -> AlgebraicNumber:
    """a / b as an algebraic number (resultant elimination + box selection)."""
    if b.is_zero:
        raise ZeroDivisionError("division by the zero algebraic number")
    return a / b


def refine(a: AlgebraicNumber, width: Fraction) -> ComplexBox:
    if width <= 0:
        raise ValueError("width must be positive")
    return a.refine(width)
