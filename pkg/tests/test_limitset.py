"""Limit-set descriptors: emptiness, growth certificates, phase structure."""

from fractions import Fraction as F

import pytest

from aorbit.arith import AlgebraicNumber, Polynomial
from aorbit.limitset import (
    BlockCase,
    Empty,
    Torus,
    limit_set,
    partition_classes,
    torus_family,
    universal_period,
)
from aorbit.oracle import orbit_prefix

ROT90 = [[F(0), F(-1)], [F(1), F(0)]]
SHEAR = [[F(1), F(1)], [F(0), F(1)]]
IRRATIONAL_ROTATION = [[F(3, 5), F(-4, 5)], [F(4, 5), F(3, 5)]]
TWO_I = [[F(2), F(0)], [F(0), F(2)]]
CONTRACTION = [[F(1, 2), F(0)], [F(0), F(1, 3)]]
FIB_COMPANION = [[F(0), F(1)], [F(1), F(1)]]  # x^2 - x - 1, golden ratio root


def _growth_verified(a, x, cert, horizon=100):
    """Exact check ||A^m x||_2 > c.m for m in (N, N + horizon]."""
    prefix = orbit_prefix(a, x, cert.N + horizon)
    for m in range(cert.N + 1, cert.N + horizon + 1):
        v = prefix.points[m]
        norm_sq = sum(c * c for c in v)
        assert norm_sq > (cert.c * m) ** 2, f"growth fails at m={m}"


@pytest.mark.parametrize(
    "a,x",
    [
        (TWO_I, [F(1), F(0)]),
        (SHEAR, [F(0), F(1)]),
        (FIB_COMPANION, [F(1), F(0)]),
    ],
)
def test_empty_families_with_verified_growth(a, x):
    d = limit_set(a, x)
    assert isinstance(d, Empty)
    _growth_verified(a, x, d.certificate)


@pytest.mark.parametrize(
    "a,x",
    [
        (ROT90, [F(1), F(0)]),
        (IRRATIONAL_ROTATION, [F(1), F(0)]),
        (CONTRACTION, [F(1), F(1)]),
        (SHEAR, [F(1), F(0)]),
    ],
)
def test_torus_families(a, x):
    d = limit_set(a, x)
    assert isinstance(d, Torus)


def test_rot90_structure():
    d = limit_set(ROT90, [F(1), F(0)])
    assert d.h == 0  # i and -i are roots of unity: rigid
    assert d.period == 4
    assert len(d.coords) == 2


def test_irrational_rotation_structure():
    d = limit_set(IRRATIONAL_ROTATION, [F(1), F(0)])
    # two conjugate non-rigid classes share one free phase
    assert len(d.classes) == 2
    assert d.h == 1
    assert len(d.free_pairs) == 1
    assert d.period == 1


def test_mixed_rotation_contraction():
    a = [
        [F(3, 5), F(-4, 5), F(0)],
        [F(4, 5), F(3, 5), F(0)],
        [F(0), F(0), F(1, 2)],
    ]
    d = limit_set(a, [F(1), F(0), F(1)])
    assert isinstance(d, Torus)
    assert d.h == 1
    assert any(
        bc.case == BlockCase.CASE_II_TO_ZERO for bc in d.classifications
    )


def test_zero_matrix_origin_limit():
    d = limit_set([[F(0), F(0)], [F(0), F(0)]], [F(1), F(2)])
    assert isinstance(d, Torus)
    assert d.coords == []  # S_L = {0}


def test_partition_classes_rigid_vs_free():
    i_unit = AlgebraicNumber(Polynomial.of(F(1), F(0), F(1)), 0)
    minus_i = AlgebraicNumber(Polynomial.of(F(1), F(0), F(1)), 1)
    classes = partition_classes([i_unit, minus_i])
    assert len(classes) == 1  # ratio -1 is a root of unity
    assert classes[0].rigid
    assert universal_period(classes) == 4

    p = Polynomial.of(F(1), F(-6, 5), F(1))
    lam = AlgebraicNumber(p, 0)
    conj = AlgebraicNumber(p, 1)
    classes = partition_classes([lam, conj])
    assert len(classes) == 2
    assert not any(c.rigid for c in classes)
    assert universal_period(classes) == 1


def test_torus_family_fixed_values():
    d = limit_set(ROT90, [F(1), F(0)])
    fam0 = torus_family(d, 0)
    fam2 = torus_family(d, 2)
    # after half the period the unit diagonal is negated: lambda^2 = -1
    for f0, f2 in zip(fam0.fixed, fam2.fixed):
        b0 = f0.eval_box(F(1, 64))
        b2 = (-f2).eval_box(F(1, 64))
        assert b0.intersects(b2)


def test_torus_family_range():
    d = limit_set(ROT90, [F(1), F(0)])
    with pytest.raises(ValueError):
        torus_family(d, 4)  # k must be < period
