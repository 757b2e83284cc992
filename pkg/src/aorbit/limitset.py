"""Limit set of a rational orbit: classification, phases, torus families.

Each Jordan block is classified against its component of z = P^{-1} x.
If any block diverges, the limit set is empty and a linear growth
certificate (c, N) with ||A^m x|| > c.m for all m > N is produced.
Otherwise the limit set is the closure of {Q D^m v}, described by the
unit eigenvalues that survive, their partition into root-of-unity-ratio
classes, the universal period N, and one torus family per k < N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .arith.algebraic import (
    EQUAL,
    GREATER,
    LESS,
    AlgebraicNumber,
    cmp_modulus_one,
    is_root_of_unity,
)
from .arith.polynomials import Polynomial, poly_pow_mod
from .spectral import (
    EUCLIDEAN,
    Embedded,
    JordanForm,
    RationalMatrix,
    RationalVector,
    embedded_matrix_norm_upper,
    jordan_decompose,
    transform_initial,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class BlockCase(Enum):
    CASE_I_DIVERGENT = "case_i_divergent"  # |lambda| > 1, nonzero component
    CASE_II_TO_ZERO = "case_ii_to_zero"  # |lambda| < 1
    CASE_III_UNIT_SCALAR = "case_iii_unit_scalar"  # 1x1 block, |lambda| = 1
    CASE_IV_BOUNDED = "case_iv_bounded"  # |lambda| = 1, eigenvector coordinate only
    CASE_IV_DIVERGENT = "case_iv_divergent"  # |lambda| = 1, mass off the eigenvector
    INERT_ZERO_COMPONENT = "inert_zero_component"


@dataclass(frozen=True)
class BlockClassification:
    block_index: int
    case: BlockCase


@dataclass(frozen=True)
class GrowthCertificate:
    """Certifies ||A^m x|| > c.m for every m > N (in the stated norm)."""

    c: Fraction
    N: int
    norm: str


@dataclass
class PhaseClass:
    """One equivalence class of unit eigenvalues under root-of-unity ratios."""

    members: List[int]  # indices into the unit list handed to partition_classes
    rigid: bool
    period: int  # N_j


@dataclass
class SurvivingCoord:
    """One coordinate of the unitary part D: a unit eigenvalue with mass."""

    coord: int  # global column index in P
    block_index: int
    factor_index: int
    root_index: int
    eigenvalue: AlgebraicNumber
    value: Embedded  # v_s: the z-entry at the eigenvector coordinate
    class_index: int = -1


@dataclass
class Empty:
    """S_L is empty; the orbit norm grows at least linearly."""

    certificate: GrowthCertificate
    form: JordanForm = field(repr=False, default=None)
    z: List[Embedded] = field(repr=False, default=None)
    classifications: List[BlockClassification] = field(repr=False, default=None)

    @property
    def is_empty(self) -> bool:
        return True


@dataclass
class Torus:
    """S_L = union over k < N of the torus families S_L^k (possibly {0}).

    Non-rigid classes occur in conjugate pairs (the matrix is real and a
    self-conjugate class would have a root-of-unity ratio, hence be
    rigid); each pair shares a single free phase with the conjugate
    constraint mu' = conj(mu), so h counts pairs, not classes.
    """

    coords: List[SurvivingCoord]
    classes: List[PhaseClass]
    free_pairs: List[Tuple[int, int]]  # (class, conjugate class), class-first
    period: int  # universal period N
    h: int  # number of free phases = conjugate pairs of non-rigid classes
    form: JordanForm = field(repr=False, default=None)
    z: List[Embedded] = field(repr=False, default=None)
    classifications: List[BlockClassification] = field(repr=False, default=None)
    norm: str = EUCLIDEAN

    @property
    def is_empty(self) -> bool:
        return False

    @property
    def unit_diagonal(self) -> List[AlgebraicNumber]:
        return [c.eigenvalue for c in self.coords]

    @property
    def Q(self) -> List[List[Embedded]]:
        return self.form.P


LimitSetDescriptor = Union[Empty, Torus]


@dataclass
class TorusFamily:
    """Fixed data of S_L^k: per coordinate, the value lambda_s^k . v_s.

    A point of S_L^k is sum_s mu(s) . fixed_s . (column s of Q) where
    mu(s) = 1 on rigid classes and, for the free pair (j, j'), mu on the
    coordinates of class j and conj(mu) on those of class j'.
    """

    k: int
    coords: List[SurvivingCoord]
    fixed: List[Embedded]  # aligned with coords
    classes: List[PhaseClass]
    free_pairs: List[Tuple[int, int]]
    h: int


def classify_blocks(
    form: JordanForm, z: Sequence[Embedded]
) -> List[BlockClassification]:
    """Lemma-2 case tags, one per Jordan block."""
    if len(z) != form.n:
        raise ValueError("z has wrong length")
    out: List[BlockClassification] = []
    for idx, blk in enumerate(form.blocks):
        comp = z[blk.start : blk.start + blk.size]
        if all(c.is_zero for c in comp):
            out.append(BlockClassification(idx, BlockCase.INERT_ZERO_COMPONENT))
            continue
        lam = blk.eigenvalue
        if lam.is_zero:
            out.append(BlockClassification(idx, BlockCase.CASE_II_TO_ZERO))
            continue
        side = cmp_modulus_one(lam)
        if side == GREATER:
            case = BlockCase.CASE_I_DIVERGENT
        elif side == LESS:
            case = BlockCase.CASE_II_TO_ZERO
        elif blk.size == 1:
            case = BlockCase.CASE_III_UNIT_SCALAR
        elif all(c.is_zero for c in comp[1:]):
            case = BlockCase.CASE_IV_BOUNDED
        else:
            case = BlockCase.CASE_IV_DIVERGENT
        out.append(BlockClassification(idx, case))
    return out


def partition_classes(units: Sequence[AlgebraicNumber]) -> List[PhaseClass]:
    """Group unit-modulus numbers by root-of-unity ratios.

    The class period N_j is the lcm of the orders of all ratios to the
    representative, joined with the members' own orders when the class
    is rigid (so D_j^{N_j} is exactly the identity on rigid classes).
    """
    classes: List[PhaseClass] = []
    reps: List[AlgebraicNumber] = []
    for i, u in enumerate(units):
        placed = False
        for cls, rep in zip(classes, reps):
            order = is_root_of_unity(u / rep)
            if order is not None:
                cls.members.append(i)
                cls.period = math.lcm(cls.period, order)
                if cls.rigid:
                    own = is_root_of_unity(u)
                    cls.period = math.lcm(cls.period, own)
                placed = True
                break
        if not placed:
            own = is_root_of_unity(u)
            rigid = own is not None
            classes.append(
                PhaseClass(members=[i], rigid=rigid, period=own if rigid else 1)
            )
            reps.append(u)
    return classes


def universal_period(classes: Sequence[PhaseClass]) -> int:
    n = 1
    for cls in classes:
        n = math.lcm(n, cls.period)
    return n


def growth_certificate(
    form: JordanForm,
    z: Sequence[Embedded],
    classifications: Sequence[BlockClassification],
    norm: str = EUCLIDEAN,
) -> GrowthCertificate:
    """Linear lower bound ||A^m x|| > c.m for m > N from a divergent block.

    Case i: the last loaded coordinate evolves as lambda^m z, and
    a^m >= 1 + m(a-1) > m(a-1) gives c = |z|.(a-1), N = 0.  Case iv: the
    coordinate before the last loaded one evolves as
    lambda^m z_{i-1} + m lambda^{m-1} z_i, whose modulus is at least
    m.|z_i| - |z_{i-1}|, giving c = |z_i|/2, N = ceil(2|z_{i-1}|/|z_i|).
    The bound transfers through ||A^m x|| >= ||J^m z|| / ||P^{-1}||.
    """
    candidates: List[Tuple[int, Fraction]] = []  # (N, c) per divergent block
    for bc in classifications:
        blk = form.blocks[bc.block_index]
        comp = z[blk.start : blk.start + blk.size]
        if bc.case == BlockCase.CASE_I_DIVERGENT:
            i_star = max(i for i, c in enumerate(comp) if not c.is_zero)
            a_lo = _modulus_lower_above_one(blk.eigenvalue)
            w_lo = _abs_lower_positive(comp[i_star])
            candidates.append((0, w_lo * (a_lo - 1)))
        elif bc.case == BlockCase.CASE_IV_DIVERGENT:
            i_star = max(i for i, c in enumerate(comp) if not c.is_zero)
            rho = _abs_lower_positive(comp[i_star])
            beta = _abs_upper(comp[i_star - 1])
            n_min = int(math.ceil(2 * beta / rho)) if beta > 0 else 0
            candidates.append((n_min, rho / 2))
    if not candidates:
        raise ValueError("growth certificate requires a divergent block")
    n_best, c_best = min(candidates, key=lambda t: (t[0], -t[1]))
    u = embedded_matrix_norm_upper(form.P_inv, norm)
    return GrowthCertificate(c=c_best / u, N=n_best, norm=norm)


def _modulus_lower_above_one(lam: AlgebraicNumber) -> Fraction:
    """Rational a with 1 < a <= |lam|; exists because |lam| > 1 exactly."""
    width = Fraction(1, 4)
    while True:
        lo = lam.refine(width).abs().lo
        if lo > 1:
            return lo
        width /= 8


def _abs_lower_positive(v: Embedded) -> Fraction:
    """Rational w with 0 < w <= |v|; requires v != 0."""
    width = Fraction(1, 4)
    while True:
        lo = v.eval_box(width).abs().lo
        if lo > 0:
            return lo
        width /= 8


def _abs_upper(v: Embedded, width: Fraction = Fraction(1, 64)) -> Fraction:
    return v.eval_box(width).abs().hi


def limit_set(
    a: RationalMatrix, x: RationalVector, norm: str = EUCLIDEAN
) -> LimitSetDescriptor:
    """Full limit-set analysis of the orbit of x under A."""
    form = jordan_decompose(a)
    z = transform_initial(form, x)
    classifications = classify_blocks(form, z)
    divergent = any(
        bc.case in (BlockCase.CASE_I_DIVERGENT, BlockCase.CASE_IV_DIVERGENT)
        for bc in classifications
    )
    if divergent:
        cert = growth_certificate(form, z, classifications, norm)
        return Empty(certificate=cert, form=form, z=z, classifications=classifications)

    coords: List[SurvivingCoord] = []
    for bc in classifications:
        if bc.case not in (BlockCase.CASE_III_UNIT_SCALAR, BlockCase.CASE_IV_BOUNDED):
            continue
        blk = form.blocks[bc.block_index]
        coords.append(
            SurvivingCoord(
                coord=blk.start,
                block_index=bc.block_index,
                factor_index=blk.factor_index,
                root_index=blk.root_index,
                eigenvalue=blk.eigenvalue,
                value=z[blk.start],
            )
        )
    units = [c.eigenvalue for c in coords]
    classes = partition_classes(units)
    for ci, cls in enumerate(classes):
        for m in cls.members:
            coords[m].class_index = ci
    free_pairs = _pair_conjugate_classes(units, classes)
    return Torus(
        coords=coords,
        classes=classes,
        free_pairs=free_pairs,
        period=universal_period(classes),
        h=len(free_pairs),
        form=form,
        z=z,
        classifications=classifications,
        norm=norm,
    )


def _pair_conjugate_classes(
    units: Sequence[AlgebraicNumber], classes: Sequence[PhaseClass]
) -> List[Tuple[int, int]]:
    """Match each non-rigid class with the class of its conjugates."""
    pairs: List[Tuple[int, int]] = []
    seen = set()
    for ci, cls in enumerate(classes):
        if cls.rigid or ci in seen:
            continue
        rep_conj = units[cls.members[0]].conj()
        partner = None
        for cj, other in enumerate(classes):
            if cj == ci or other.rigid:
                continue
            if any(units[m] == rep_conj for m in other.members):
                partner = cj
                break
        if partner is None:  # membership by ratio rather than exact identity
            for cj, other in enumerate(classes):
                if cj == ci or other.rigid or cj in seen:
                    continue
                if is_root_of_unity(rep_conj / units[other.members[0]]) is not None:
                    partner = cj
                    break
        if partner is None:  # pragma: no cover - impossible for real matrices
            raise ArithmeticError("unpaired non-rigid phase class")
        seen.add(ci)
        seen.add(partner)
        pairs.append((ci, partner))
    return pairs


def torus_family(d: LimitSetDescriptor, k: int) -> TorusFamily:
    """Fixed factor of S_L^k: per surviving coordinate, lambda_s^k . v_s."""
    if not isinstance(d, Torus):
        raise ValueError("torus_family requires a Torus descriptor")
    if not 0 <= k < d.period:
        raise ValueError(f"k must lie in [0, {d.period})")
    fixed: List[Embedded] = []
    for sc in d.coords:
        fld = d.form.factors[sc.factor_index].fld
        pow_rep = poly_pow_mod(Polynomial.x(), k, fld.modulus)
        lam_k = fld.element(pow_rep)
        fixed.append(Embedded(lam_k * sc.value.elem, sc.root_index))
    return TorusFamily(
        k=k,
        coords=d.coords,
        fixed=fixed,
        classes=d.classes,
        free_pairs=d.free_pairs,
        h=d.h,
    )
