"""Arithmetic layer: exact rationals, intervals, polynomials, algebraic numbers."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from aorbit.arith import (
    EQUAL,
    GREATER,
    LESS,
    AlgebraicNumber,
    ComplexBox,
    Interval,
    NumberField,
    Polynomial,
    cmp_modulus_one,
    format_rational,
    is_root_of_unity,
    isolate_roots,
    parse_rational,
    poly_gcd,
    sqrt_lower,
    sqrt_upper,
)

rationals = st.fractions(
    min_value=-1000, max_value=1000, max_denominator=1000
).map(F)
small_rationals = st.fractions(
    min_value=-8, max_value=8, max_denominator=12
).map(F)


# -- rationals --------------------------------------------------------------


@given(rationals)
def test_parse_format_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


def test_parse_rational_forms():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("-7") == F(-7)
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("x")


@given(st.fractions(min_value=0, max_value=10000, max_denominator=1000).map(F))
def test_sqrt_bounds_sandwich(q):
    lo = sqrt_lower(q, 32)
    hi = sqrt_upper(q, 32)
    assert lo * lo <= q <= hi * hi
    assert hi - lo <= F(1, 2**30) + hi / 2**30


# -- intervals --------------------------------------------------------------


@given(small_rationals, small_rationals, small_rationals, small_rationals)
def test_interval_arithmetic_containment(a, b, c, d):
    i1 = Interval(min(a, b), max(a, b))
    i2 = Interval(min(c, d), max(c, d))
    for p in (i1.lo, i1.hi, (i1.lo + i1.hi) / 2):
        for q in (i2.lo, i2.hi):
            assert (i1 + i2).contains(p + q)
            assert (i1 - i2).contains(p - q)
            assert (i1 * i2).contains(p * q)


@given(small_rationals, small_rationals, small_rationals, small_rationals)
def test_complex_box_product_containment(a, b, c, d):
    z1 = ComplexBox.point(a, b)
    z2 = ComplexBox.point(c, d)
    prod = z1 * z2
    assert prod.re.contains(a * c - b * d)
    assert prod.im.contains(a * d + b * c)


def test_interval_abs_and_sqrt():
    i = Interval(F(-3), F(2)).abs()
    assert i.lo == 0 and i.hi == 3
    s = Interval(F(4), F(9)).sqrt(32)
    assert s.lo <= 2 and s.hi >= 3


# -- polynomials ------------------------------------------------------------


coeff_lists = st.lists(small_rationals, min_size=1, max_size=5)


@given(coeff_lists, coeff_lists)
def test_poly_divmod_identity(ac, bc):
    a = Polynomial.from_list(ac)
    b = Polynomial.from_list(bc)
    if b.degree < 0:
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(coeff_lists, coeff_lists)
def test_poly_gcd_divides(ac, bc):
    a = Polynomial.from_list(ac)
    b = Polynomial.from_list(bc)
    g = poly_gcd(a, b)
    if g.degree < 0:
        assert a.degree < 0 and b.degree < 0
        return
    assert (a % g).degree < 0
    assert (b % g).degree < 0


# -- algebraic numbers ------------------------------------------------------


def test_gaussian_unit_modulus():
    # (3 + 4i)/5: min poly x^2 - (6/5)x + 1
    a = AlgebraicNumber(Polynomial.of(F(1), F(-6, 5), F(1)), 0)
    assert cmp_modulus_one(a) == EQUAL
    assert is_root_of_unity(a) is None


def test_modulus_trichotomy():
    two = AlgebraicNumber.from_rational(F(2))
    half = AlgebraicNumber.from_rational(F(1, 2))
    i_unit = AlgebraicNumber(Polynomial.of(F(1), F(0), F(1)), 0)
    assert cmp_modulus_one(two) == GREATER
    assert cmp_modulus_one(half) == LESS
    assert cmp_modulus_one(i_unit) == EQUAL


def test_root_of_unity_orders():
    i_unit = AlgebraicNumber(Polynomial.of(F(1), F(0), F(1)), 0)
    assert is_root_of_unity(i_unit) == 4
    minus_one = AlgebraicNumber.from_rational(F(-1))
    assert is_root_of_unity(minus_one) == 2
    one = AlgebraicNumber.from_rational(F(1))
    assert is_root_of_unity(one) == 1
    fifth = AlgebraicNumber(Polynomial.of(F(1), F(1), F(1), F(1), F(1)), 0)
    assert is_root_of_unity(fifth) == 5
    sqrt2 = AlgebraicNumber(Polynomial.of(F(-2), F(0), F(1)), 1)
    assert is_root_of_unity(sqrt2) is None


def test_algebraic_add_mul():
    x2m2 = Polynomial.of(F(-2), F(0), F(1))
    x2m3 = Polynomial.of(F(-3), F(0), F(1))
    s2 = AlgebraicNumber(x2m2, 1)  # positive root
    s3 = AlgebraicNumber(x2m3, 1)
    total = s2 + s3
    box = total.refine(F(1, 2**20))
    val = 2**0.5 + 3**0.5
    assert float(box.re.lo) <= val <= float(box.re.hi)
    prod = s2 * s3  # sqrt(6)
    box = prod.refine(F(1, 2**20))
    assert float(box.re.lo) <= 6**0.5 <= float(box.re.hi)


def test_algebraic_pow_closes():
    sqrt2 = AlgebraicNumber(Polynomial.of(F(-2), F(0), F(1)), 1)
    sq = sqrt2.pow(2)
    assert sq.min_poly == Polynomial.of(F(-2), F(1))  # x - 2


def test_isolate_roots_disjoint():
    p = Polynomial.of(F(-2), F(0), F(1)) * Polynomial.of(F(-3), F(0), F(1))
    roots = isolate_roots(p, F(1, 64))
    assert sum(m for _, m in roots) == 4
    boxes = [r.refine(F(1, 64)) for r, _ in roots]
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            assert not boxes[i].intersects(boxes[j])


@given(st.integers(min_value=2, max_value=12))
@settings(deadline=None)
def test_refine_nesting(k):
    a = AlgebraicNumber(Polynomial.of(F(-2), F(0), F(1)), 1)
    outer = a.refine(F(1, 2**k))
    inner = a.refine(F(1, 2 ** (k + 4)))
    assert outer.re.lo <= inner.re.lo and inner.re.hi <= outer.re.hi
    assert outer.im.lo <= inner.im.lo and inner.im.hi <= outer.im.hi


def test_number_field_traces():
    fld = NumberField(Polynomial.of(F(-2), F(0), F(1)))  # Q(sqrt 2)
    assert fld.generator().trace() == 0
    assert (fld.generator() * fld.generator()).trace() == 4
    inv = fld.generator().inverse()
    assert (inv * fld.generator()) == fld.one()
