"""Acceptance criteria: soundness sweep, oracle agreement, exactness,
designed families, convergence, trichotomy, envelopes, detection, scaling,
and the end-to-end worked instances."""

import random
from fractions import Fraction as F

import pytest

from aorbit.arith import AlgebraicNumber, Polynomial, is_root_of_unity
from aorbit.decide import (
    VerdictTag,
    contraction_certificate,
    decide,
    member_check,
)
from aorbit.distance import DistanceSeries, GapOutcome, bound_gap
from aorbit.limitset import Empty, Torus, limit_set
from aorbit.oracle import (
    brute_force_decide,
    orbit_prefix,
    verify_no_hits,
)
from aorbit.spectral import jordan_decompose, _verify_inverse

TWO_I = [[F(2), F(0)], [F(0), F(2)]]
ROT90 = [[F(0), F(-1)], [F(1), F(0)]]
SHEAR = [[F(1), F(1)], [F(0), F(1)]]
CONTRACTION = [[F(1, 2), F(0)], [F(0), F(1, 3)]]
IRRATIONAL_ROTATION = [[F(3, 5), F(-4, 5)], [F(4, 5), F(3, 5)]]

SUITE_SEED = 20260823
SUITE_SIZE = 200


def _random_instance(rng):
    n = rng.randint(1, 3)

    def rat():
        return F(rng.randint(-10, 10), rng.randint(1, 10))

    a = [[rat() for _ in range(n)] for _ in range(n)]
    x = [rat() for _ in range(n)]
    y = [rat() for _ in range(n)]
    delta = F(rng.randint(1, 10), rng.randint(1, 10))
    return a, x, y, delta


@pytest.fixture(scope="module")
def suite():
    rng = random.Random(SUITE_SEED)
    return [_random_instance(rng) for _ in range(SUITE_SIZE)]


@pytest.fixture(scope="module")
def verdicts(suite):
    return [decide(a, x, y, delta) for a, x, y, delta in suite]


# -- criterion 1: soundness sweep ------------------------------------------


def test_criterion_1_soundness_sweep(suite, verdicts):
    for (a, x, y, delta), v in zip(suite, verdicts):
        if v.tag == VerdictTag.YES:
            assert member_check(a, x, y, delta, v.witness)
        elif v.tag == VerdictTag.NO:
            k_max = max(10 * v.bound, 10**6)
            hit = verify_no_hits(a, x, y, delta, k_max)
            assert hit is None, f"oracle found hit at k={hit}"


# -- criterion 2: oracle agreement ------------------------------------------


def test_criterion_2_oracle_agreement(suite, verdicts):
    for (a, x, y, delta), v in zip(suite, verdicts):
        hit = brute_force_decide(a, x, y, delta, 10**4)
        if hit is not None:
            assert v.tag == VerdictTag.YES, (
                f"oracle hit k={hit} but verdict {v.tag}"
            )


# -- criterion 3: Jordan exactness ------------------------------------------


def test_criterion_3_jordan_exactness():
    from aorbit.arith.numberfield import mat_from_rational, mat_mul
    from aorbit.spectral import _jordan_matrix

    rng = random.Random(SUITE_SEED + 1)
    for _ in range(100):
        n = rng.randint(1, 4)
        a = [
            [F(rng.randint(-10, 10), rng.randint(1, 10)) for _ in range(n)]
            for _ in range(n)
        ]
        form = jordan_decompose(a)
        assert sum(b.size for b in form.blocks) == n
        for fd in form.factors:
            m = mat_from_rational(fd.fld, [[F(v) for v in row] for row in a])
            j = _jordan_matrix(fd.fld, fd.fld.generator(), fd.block_sizes)
            assert mat_mul(m, fd.chain_columns) == mat_mul(fd.chain_columns, j)
        _verify_inverse(form)  # exact P . P^-1 = I


# -- criterion 4: limit-set emptiness ---------------------------------------


def test_criterion_4_empty_families_with_growth():
    companion = [[F(0), F(1)], [F(1), F(1)]]  # root (1+sqrt5)/2 outside the disk
    for a, x in [
        (TWO_I, [F(1), F(0)]),
        (SHEAR, [F(0), F(1)]),
        (companion, [F(1), F(0)]),
    ]:
        d = limit_set(a, x)
        assert isinstance(d, Empty)
        cert = d.certificate
        prefix = orbit_prefix(a, x, cert.N + 100)
        for m in range(cert.N + 1, cert.N + 101):
            norm_sq = sum(c * c for c in prefix.points[m])
            assert norm_sq > (cert.c * m) ** 2


def test_criterion_4_torus_families():
    for a, x in [
        (ROT90, [F(1), F(0)]),
        (IRRATIONAL_ROTATION, [F(1), F(0)]),
        (CONTRACTION, [F(1), F(1)]),
        (SHEAR, [F(1), F(0)]),
    ]:
        assert isinstance(limit_set(a, x), Torus)


# -- criterion 5: distance convergence --------------------------------------


def test_criterion_5_distance_convergence():
    d = limit_set(IRRATIONAL_ROTATION, [F(1), F(0)])
    series = DistanceSeries(d, [F(2), F(0)])
    for j in range(1, 21):
        x_j = series.at(j).upper
        assert F(0) < x_j - F(1) <= F(1, 2**j), f"level {j}"

    d = limit_set(ROT90, [F(1), F(0)])
    series = DistanceSeries(d, [F(9, 10), F(0)])
    for j in range(1, 21):
        x_j = series.at(j).upper
        assert F(1, 10) < x_j <= F(1, 10) + F(1, 2**j), f"level {j}"


# -- criterion 6: gap trichotomy ---------------------------------------------


def test_criterion_6_trichotomy():
    d = limit_set(IRRATIONAL_ROTATION, [F(1), F(0)])
    y = [F(2), F(0)]

    over = bound_gap(d, y, F(3, 2), j_max=20)
    assert over.outcome == GapOutcome.RADIUS_EXCEEDS_D
    assert F(0) < over.eta <= abs(F(3, 2) - F(1))

    under = bound_gap(d, y, F(1, 2), j_max=20)
    assert under.outcome == GapOutcome.RADIUS_BELOW_D
    assert F(0) < under.eta <= abs(F(1, 2) - F(1))

    boundary = bound_gap(d, y, F(1), j_max=20)
    assert boundary.outcome == GapOutcome.EXHAUSTED
    assert boundary.bound.lower <= F(1) <= boundary.bound.upper


# -- criterion 7: contraction envelope ---------------------------------------


def test_criterion_7_contraction_envelope():
    d = limit_set(CONTRACTION, [F(1), F(1)])
    cert = contraction_certificate(d)
    prefix = orbit_prefix(CONTRACTION, [F(1), F(1)], 200)
    for k in range(201):
        norm_sq = sum(c * c for c in prefix.points[k])
        bound = cert.s * cert.lam**k
        assert norm_sq <= bound * bound, f"envelope fails at k={k}"


# -- criterion 8: root-of-unity detection -------------------------------------


def test_criterion_8_root_of_unity_detection():
    i_unit = AlgebraicNumber(Polynomial.of(F(1), F(0), F(1)), 0)
    assert is_root_of_unity(i_unit) == 4
    assert is_root_of_unity(AlgebraicNumber.from_rational(F(-1))) == 2
    assert is_root_of_unity(AlgebraicNumber.from_rational(F(1))) == 1
    gaussian = AlgebraicNumber(Polynomial.of(F(1), F(-6, 5), F(1)), 0)
    assert is_root_of_unity(gaussian) is None
    fifth = AlgebraicNumber(Polynomial.of(F(1), F(1), F(1), F(1), F(1)), 0)
    assert is_root_of_unity(fifth) == 5


# -- criterion 9: scaling coherence -------------------------------------------


def test_criterion_9_scaling_coherence(suite, verdicts):
    rng = random.Random(SUITE_SEED + 2)
    for (a, x, y, delta), v in list(zip(suite, verdicts))[:50]:
        s = F(rng.randint(1, 12), rng.randint(1, 12))
        scaled = decide(a, [s * c for c in x], [s * c for c in y], s * delta)
        assert scaled.tag == v.tag, f"scaling by {s} changed the verdict"


# -- criterion 10: end-to-end worked instances --------------------------------


def test_criterion_10_worked_instances():
    v = decide(TWO_I, [F(1), F(0)], [F(4), F(0)], F(1, 2))
    assert v.tag == VerdictTag.YES and v.witness == 2

    v = decide(TWO_I, [F(1), F(0)], [F(5), F(0)], F(1, 2))
    assert v.tag == VerdictTag.NO

    v = decide(CONTRACTION, [F(1), F(1)], [F(0), F(0)], F(1, 10))
    assert v.tag == VerdictTag.YES and v.witness == 4

    v = decide(ROT90, [F(1), F(0)], [F(9, 10), F(0)], F(1, 5))
    assert v.tag == VerdictTag.YES and v.witness == 0

    v = decide(IRRATIONAL_ROTATION, [F(1), F(0)], [F(2), F(0)], F(1))
    assert v.tag == VerdictTag.UNDECIDED_BOUNDARY
    b = v.distance_bound
    assert b is not None and b.lower <= F(1) <= b.upper
