"""Independent oracle: exact orbits, brute force, certified no-hit sweeps."""

from fractions import Fraction as F

import pytest

from aorbit.oracle import (
    OracleBudgetError,
    brute_force_decide,
    empirical_min_distance,
    orbit_prefix,
    verify_no_hits,
)

TWO_I = [[F(2), F(0)], [F(0), F(2)]]
ROT90 = [[F(0), F(-1)], [F(1), F(0)]]
SHEAR = [[F(1), F(1)], [F(0), F(1)]]
CONTRACTION = [[F(1, 2), F(0)], [F(0), F(1, 3)]]
IRRATIONAL_ROTATION = [[F(3, 5), F(-4, 5)], [F(4, 5), F(3, 5)]]
IDENTITY = [[F(1), F(0)], [F(0), F(1)]]


def test_orbit_prefix_examples():
    p = orbit_prefix(IDENTITY, [F(1), F(2)], 3)
    assert p.points == tuple([(F(1), F(2))] * 4)
    p = orbit_prefix(ROT90, [F(1), F(0)], 4)
    assert p.points == (
        (F(1), F(0)),
        (F(0), F(1)),
        (F(-1), F(0)),
        (F(0), F(-1)),
        (F(1), F(0)),
    )
    p = orbit_prefix(SHEAR, [F(0), F(1)], 3)
    assert p.points == ((F(0), F(1)), (F(1), F(1)), (F(2), F(1)), (F(3), F(1)))


def test_orbit_prefix_recurrence():
    p = orbit_prefix(CONTRACTION, [F(1), F(1)], 6)
    for k in range(6):
        v = p.points[k]
        nxt = tuple(
            sum(CONTRACTION[i][j] * v[j] for j in range(2)) for i in range(2)
        )
        assert nxt == p.points[k + 1]


def test_brute_force_examples():
    assert brute_force_decide(TWO_I, [F(1), F(0)], [F(4), F(0)], F(1, 2), 10) == 2
    assert (
        brute_force_decide(CONTRACTION, [F(1), F(1)], [F(0), F(0)], F(1, 10), 10) == 4
    )
    assert (
        brute_force_decide(
            IRRATIONAL_ROTATION, [F(1), F(0)], [F(2), F(0)], F(1, 2), 2000
        )
        is None
    )


def test_empirical_min_distance_examples():
    v, k = empirical_min_distance(ROT90, [F(1), F(0)], [F(9, 10), F(0)], range(8))
    assert (v, k) == (F(1, 10), 0)
    v, k = empirical_min_distance(TWO_I, [F(1), F(0)], [F(5), F(0)], range(6))
    assert (v, k) == (F(1), 2)
    v, k = empirical_min_distance(IDENTITY, [F(1), F(2)], [F(1), F(1)], range(5))
    assert (v, k) == (F(1), 0)


def test_verify_no_hits_expansion_escape():
    assert (
        verify_no_hits(TWO_I, [F(1), F(0)], [F(5), F(0)], F(1, 2), 10**6) is None
    )


def test_verify_no_hits_contraction_escape():
    assert (
        verify_no_hits(CONTRACTION, [F(1), F(1)], [F(5), F(0)], F(1, 2), 10**6)
        is None
    )


def test_verify_no_hits_cycle_detection():
    assert (
        verify_no_hits(ROT90, [F(1), F(0)], [F(5), F(0)], F(1, 2), 10**6) is None
    )


def test_verify_no_hits_enclosure_sweep():
    assert (
        verify_no_hits(
            IRRATIONAL_ROTATION, [F(1), F(0)], [F(2), F(0)], F(1, 2), 10**5
        )
        is None
    )


def test_verify_no_hits_finds_hits():
    assert verify_no_hits(TWO_I, [F(1), F(0)], [F(4), F(0)], F(1, 2), 10**6) == 2
    assert (
        verify_no_hits(
            IRRATIONAL_ROTATION, [F(1), F(0)], [F(1), F(0)], F(1, 2), 10**6
        )
        == 0
    )


def test_verify_no_hits_scalar_boundary_convergence():
    # orbit (4/9)^k * 2 -> 0 sits exactly on the sphere of the target ball;
    # signs never match, so no hit ever — certified by the window scan
    assert verify_no_hits([[F(4, 9)]], [F(2)], [F(-1, 7)], F(1, 7), 10**6) is None
    # zero start: the orbit is constantly 0, outside the ball
    assert verify_no_hits([[F(10, 9)]], [F(0)], [F(2)], F(5, 9), 10**6) is None
    # zero start inside the ball hits immediately
    assert verify_no_hits([[F(10, 9)]], [F(0)], [F(1, 3)], F(1, 2), 10**6) == 0


def test_verify_no_hits_scalar_finds_hits():
    assert verify_no_hits([[F(1, 2)]], [F(8)], [F(1)], F(1, 4), 10**6) == 3
    assert verify_no_hits([[F(2)]], [F(1)], [F(8)], F(1, 2), 10**6) == 3
    assert verify_no_hits([[F(1, 3)]], [F(5)], [F(0)], F(1, 10), 10**6) == 4


def test_verify_no_hits_fixed_point_tail():
    # eigenvalues 1 and -7/10: the orbit converges to a rational fixed
    # point; neither expanding, totally contracting, nor near-isometric
    a = [[F(1), F(5, 2)], [F(0), F(-7, 10)]]
    x = [F(-10), F(8, 3)]
    assert verify_no_hits(a, x, [F(-3, 5), F(-6)], F(4, 3), 10**6) is None
    # same dynamics with the ball around the limit point: a hit exists
    limit = [F(-10) + F(5, 2) * F(8, 3) / F(17, 10), F(0)]
    hit = verify_no_hits(a, x, limit, F(1, 10), 10**6)
    assert hit is not None
    from aorbit.decide import member_check

    assert member_check(a, x, limit, F(1, 10), hit)


def test_orbit_prefix_validation():
    with pytest.raises(ValueError):
        orbit_prefix(IDENTITY, [F(1), F(2)], -1)
    with pytest.raises(ValueError):
        empirical_min_distance(IDENTITY, [F(1), F(2)], [F(0), F(0)], [])
