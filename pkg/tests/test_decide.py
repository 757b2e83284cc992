"""Top-level decision procedure."""

from fractions import Fraction as F

import pytest

from aorbit.decide import (
    DecideOptions,
    VerdictTag,
    contraction_certificate,
    decide,
    member_check,
)
from aorbit.limitset import limit_set
from aorbit.oracle import orbit_prefix
from aorbit.spectral import MAX

TWO_I = [[F(2), F(0)], [F(0), F(2)]]
CONTRACTION = [[F(1, 2), F(0)], [F(0), F(1, 3)]]
ROT90 = [[F(0), F(-1)], [F(1), F(0)]]
SHEAR = [[F(1), F(1)], [F(0), F(1)]]


def test_member_check_examples():
    assert member_check(TWO_I, [F(1), F(0)], [F(4), F(0)], F(1, 2), 2)
    assert not member_check(TWO_I, [F(1), F(0)], [F(4), F(0)], F(1, 2), 1)
    assert member_check(CONTRACTION, [F(1), F(1)], [F(0), F(0)], F(1, 10), 4)


def test_member_check_max_norm():
    assert member_check(SHEAR, [F(0), F(1)], [F(3), F(1)], F(1, 2), 3, MAX)
    assert not member_check(SHEAR, [F(0), F(1)], [F(3), F(2)], F(1, 2), 3, MAX)


def test_decide_empty_yes():
    v = decide(TWO_I, [F(1), F(0)], [F(4), F(0)], F(1, 2))
    assert v.tag == VerdictTag.YES and v.witness == 2
    assert v.growth is not None


def test_decide_empty_no():
    v = decide(TWO_I, [F(1), F(0)], [F(5), F(0)], F(1, 2))
    assert v.tag == VerdictTag.NO
    assert v.bound is not None and v.bound >= 2
    assert v.growth is not None


def test_decide_contraction_yes():
    v = decide(CONTRACTION, [F(1), F(1)], [F(0), F(0)], F(1, 10))
    assert v.tag == VerdictTag.YES and v.witness == 4


def test_decide_rot90_yes_at_zero():
    v = decide(ROT90, [F(1), F(0)], [F(9, 10), F(0)], F(1, 5))
    assert v.tag == VerdictTag.YES and v.witness == 0


def test_decide_no_via_contraction_certificate():
    v = decide(CONTRACTION, [F(1), F(1)], [F(5), F(0)], F(1, 2))
    assert v.tag == VerdictTag.NO
    assert v.contraction is not None
    assert 0 < v.contraction.lam < 1


def test_contraction_envelope_dominates_orbit():
    d = limit_set(CONTRACTION, [F(1), F(1)])
    cert = contraction_certificate(d)
    assert 0 < cert.lam < 1
    prefix = orbit_prefix(CONTRACTION, [F(1), F(1)], 50)
    for k in range(cert.K + 1, 51):
        norm_sq = sum(c * c for c in prefix.points[k])
        bound = cert.s * cert.lam**k
        assert norm_sq <= bound * bound


def test_decide_input_validation():
    with pytest.raises(ValueError):
        decide([[F(1), F(0)]], [F(1)], [F(1)], F(1))  # non-square
    with pytest.raises(ValueError):
        decide(TWO_I, [F(1)], [F(1), F(0)], F(1))  # dim mismatch
    with pytest.raises(ValueError):
        decide(TWO_I, [F(1), F(0)], [F(1), F(0)], F(0))  # delta <= 0
    with pytest.raises(ValueError):
        decide(TWO_I, [F(1), F(0)], [F(1), F(0)], F(1), norm="l7")


def test_decide_max_norm():
    v = decide(TWO_I, [F(1), F(0)], [F(4), F(0)], F(1, 2), norm=MAX)
    assert v.tag == VerdictTag.YES and v.witness == 2


def test_scaling_preserves_tag():
    s = F(7, 3)
    for y, delta in [([F(4), F(0)], F(1, 2)), ([F(5), F(0)], F(1, 2))]:
        base = decide(TWO_I, [F(1), F(0)], y, delta)
        scaled = decide(
            TWO_I,
            [s * F(1), s * F(0)],
            [s * v for v in y],
            s * delta,
        )
        assert base.tag == scaled.tag


def test_decide_options_threading():
    opts = DecideOptions(max_j=4, net_cap=2000, witness_cap=100)
    v = decide(TWO_I, [F(1), F(0)], [F(4), F(0)], F(1, 2), options=opts)
    assert v.tag == VerdictTag.YES
