"""Exact Jordan decomposition over per-factor number fields."""

import random
from fractions import Fraction as F

import pytest

from aorbit.arith import Polynomial
from aorbit.arith.numberfield import mat_mul
from aorbit.spectral import (
    EUCLIDEAN,
    MAX,
    boxes_norm_interval,
    char_poly,
    jordan_decompose,
    transform_initial,
    _verify_inverse,
)

ROT90 = [[F(0), F(-1)], [F(1), F(0)]]
SHEAR = [[F(1), F(1)], [F(0), F(1)]]
IRRATIONAL_ROTATION = [[F(3, 5), F(-4, 5)], [F(4, 5), F(3, 5)]]


def test_char_poly_examples():
    assert char_poly(ROT90) == Polynomial.of(F(1), F(0), F(1))
    assert char_poly(SHEAR) == Polynomial.of(F(1), F(-2), F(1))
    assert char_poly(IRRATIONAL_ROTATION) == Polynomial.of(F(1), F(-6, 5), F(1))


def test_shear_is_single_size2_block():
    form = jordan_decompose(SHEAR)
    assert [b.size for b in form.blocks] == [2]
    lam = form.blocks[0].eigenvalue
    assert lam.min_poly == Polynomial.of(F(-1), F(1))  # x - 1


def test_rot90_two_unit_blocks():
    form = jordan_decompose(ROT90)
    assert sorted(b.size for b in form.blocks) == [1, 1]
    for b in form.blocks:
        assert b.eigenvalue.min_poly == Polynomial.of(F(1), F(0), F(1))


def test_diagonal_repeated_eigenvalue():
    form = jordan_decompose([[F(2), F(0)], [F(0), F(2)]])
    assert sorted(b.size for b in form.blocks) == [1, 1]


def _verify_similarity(form):
    """A . U = U . J entry-exactly in each factor's number field."""
    from aorbit.arith.numberfield import mat_from_rational
    from aorbit.spectral import _jordan_matrix

    a_rows = [[F(v) for v in row] for row in form.matrix]
    for fd in form.factors:
        fld = fd.fld
        m = mat_from_rational(fld, a_rows)
        u = fd.chain_columns
        j = _jordan_matrix(fld, fld.generator(), fd.block_sizes)
        left = mat_mul(m, u)
        right = mat_mul(u, j)
        assert left == right


@pytest.mark.parametrize("seed", range(8))
def test_random_jordan_exactness(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    a = [
        [F(rng.randint(-10, 10), rng.randint(1, 10)) for _ in range(n)]
        for _ in range(n)
    ]
    form = jordan_decompose(a)
    assert sum(b.size for b in form.blocks) == n
    _verify_similarity(form)
    _verify_inverse(form)  # exact P . P^-1 = I over the rationals


def test_transform_initial_shear():
    form = jordan_decompose(SHEAR)
    z = transform_initial(form, [F(0), F(1)])
    # the block must carry mass beyond the eigenvector coordinate
    assert not z[-1].is_zero


def test_boxes_norm_interval():
    from aorbit.arith import ComplexBox

    boxes = [ComplexBox.point(F(3)), ComplexBox.point(F(4))]
    e = boxes_norm_interval(boxes, EUCLIDEAN)
    assert e.lo <= 5 <= e.hi
    m = boxes_norm_interval(boxes, MAX)
    assert m.lo <= 4 <= m.hi
