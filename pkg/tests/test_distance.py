"""Certified distance bounds and the gap trichotomy."""

from fractions import Fraction as F

import pytest

from aorbit.arith import ComplexBox
from aorbit.distance import (
    DistanceSeries,
    GapOutcome,
    bound_gap,
    distance_upper_series,
    eval_f,
    lipschitz_bound,
    net_min,
)
from aorbit.limitset import limit_set

IRRATIONAL_ROTATION = [[F(3, 5), F(-4, 5)], [F(4, 5), F(3, 5)]]
ROT90 = [[F(0), F(-1)], [F(1), F(0)]]

Y2 = [F(2), F(0)]  # D(y, S_L) = 1 for the unit-circle limit set


@pytest.fixture(scope="module")
def irr():
    return limit_set(IRRATIONAL_ROTATION, [F(1), F(0)])


@pytest.fixture(scope="module")
def rot():
    return limit_set(ROT90, [F(1), F(0)])


def test_eval_f_at_unimodular_points(irr):
    # mu = 1 lands on (1, 0): distance to (2, 0) is exactly 1
    one = eval_f(irr, Y2, 0, [ComplexBox.point(F(1))], F(1, 2**16))
    assert one.contains(F(1)) and one.width <= F(1, 2**16)
    # mu = -1 lands on (-1, 0): distance 3
    three = eval_f(irr, Y2, 0, [ComplexBox.point(F(-1))], F(1, 2**16))
    assert three.contains(F(3))


def test_lipschitz_bound_positive(irr):
    lip = lipschitz_bound(irr)
    assert lip > 0


def test_net_min_sandwich(irr):
    spacing = F(1, 64)
    lip = lipschitz_bound(irr)
    u = net_min(irr, Y2, 0, spacing)
    assert F(1) <= u <= F(1) + lip * spacing


def test_distance_series_brackets_analytic_value(irr):
    series = DistanceSeries(irr, Y2)
    for j in range(1, 13):
        b = series.at(j)
        gap = b.upper - F(1)
        assert F(0) < gap <= F(1, 2**j)
        assert b.lower <= F(1) <= b.upper
        assert b.upper - b.lower < F(1, 2**j)


def test_distance_series_monotone_levels(irr):
    series = DistanceSeries(irr, Y2)
    prev = None
    for j in range(1, 9):
        b = series.at(j)
        if prev is not None:
            assert b.upper <= prev
        prev = b.upper
    with pytest.raises(ValueError):
        series.at(3)  # levels must increase


def test_rot90_distance_series(rot):
    y = [F(9, 10), F(0)]
    for j in (4, 8, 12):
        b = distance_upper_series(rot, y, j)
        assert F(1, 10) < b.upper <= F(1, 10) + F(1, 2**j)


def test_gap_trichotomy(irr):
    over = bound_gap(irr, Y2, F(3, 2), j_max=10)
    assert over.outcome == GapOutcome.RADIUS_EXCEEDS_D
    assert 0 < over.eta <= F(1, 2)

    under = bound_gap(irr, Y2, F(1, 2), j_max=10)
    assert under.outcome == GapOutcome.RADIUS_BELOW_D
    assert 0 < under.eta <= F(1, 2)

    boundary = bound_gap(irr, Y2, F(1), j_max=10)
    assert boundary.outcome == GapOutcome.EXHAUSTED
    assert boundary.bound.lower <= F(1) <= boundary.bound.upper


def test_gap_monotone_in_level_cap(irr):
    shallow = bound_gap(irr, Y2, F(3, 2), j_max=3)
    deep = bound_gap(irr, Y2, F(3, 2), j_max=20)
    assert shallow.outcome == deep.outcome == GapOutcome.RADIUS_EXCEEDS_D


def test_distance_requires_torus():
    d = limit_set([[F(2), F(0)], [F(0), F(2)]], [F(1), F(0)])
    with pytest.raises(ValueError):
        distance_upper_series(d, Y2, 2)
