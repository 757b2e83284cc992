"""Top-level decision procedure for the approximate orbit problem.

Empty limit set: the growth certificate bounds any possible hit by
B = max(ceil((delta + ||y||)/c), N), and the prefix k <= B is checked
exactly.  Nonempty limit set: the gap test decides which side of
D(y, S_L) the radius falls on; if delta exceeds D a witness exists and
is found by exact enumeration, if delta is below D the contraction
certificate (s, lambda, K) caps the search at the least k with
s.lambda^k <= eta, and the exact prefix check is decisive.  The exact
boundary delta = D(y, S_L) is reported as UNDECIDED_BOUNDARY.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arith.rationals import sqrt_upper
from .distance import (
    DEFAULT_NET_CAP,
    DistanceBound,
    GapOutcome,
    GapResult,
    bound_gap,
)
from .errors import ResourceLimitExceeded
from .limitset import (
    BlockCase,
    Empty,
    GrowthCertificate,
    LimitSetDescriptor,
    Torus,
    limit_set,
)
from .spectral import (
    EUCLIDEAN,
    MAX,
    RationalMatrix,
    RationalVector,
    embedded_matrix_norm_upper,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class VerdictTag(Enum):
    YES = "YES"
    NO = "NO"
    UNDECIDED_BOUNDARY = "UNDECIDED_BOUNDARY"


@dataclass(frozen=True)
class ContractionCertificate:
    """For every k > K, D(A^k x, S_L) <= s.lambda^k.

    Derived from the envelope ||R^k r'|| <= W.k^(T-1).rho^k over the
    strictly contracting Jordan coordinates; lambda = (rho + 1)/2 and K
    is the least index past which the envelope is dominated by lambda^k
    (monotonically).  zero_envelope marks orbits lying on S_L exactly.
    """

    s: Fraction
    lam: Fraction
    K: int
    rho: Fraction
    envelope_coeff: Fraction  # W
    envelope_degree: int  # T - 1
    zero_envelope: bool
    norm: str


@dataclass
class DecideOptions:
    max_j: int = 64
    net_cap: int = DEFAULT_NET_CAP
    witness_cap: int = 1_000_000


@dataclass
class Verdict:
    tag: VerdictTag
    witness: Optional[int] = None
    bound: Optional[int] = None
    growth: Optional[GrowthCertificate] = None
    contraction: Optional[ContractionCertificate] = None
    gap: Optional[GapResult] = None
    distance_bound: Optional[DistanceBound] = None
    diagnostics: Dict[str, str] = field(default_factory=dict)


# -- exact rational linear algebra ----------------------------------------


def _as_fracs(a: RationalMatrix) -> List[List[Fraction]]:
    return [[Fraction(v) for v in row] for row in a]


def _mat_vec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> List[Fraction]:
    return [sum((r[i] * v[i] for i in range(len(v))), _ZERO) for r in a]


def _mat_mul(a, b):
    n = len(a)
    return [
        [sum((a[i][k] * b[k][j] for k in range(n)), _ZERO) for j in range(n)]
        for i in range(n)
    ]


def _mat_pow_vec(a, v: Sequence[Fraction], k: int) -> List[Fraction]:
    """A^k v by binary powering of the matrix."""
    n = len(a)
    result = list(v)
    base = [row[:] for row in a]
    while k:
        if k & 1:
            result = _mat_vec(base, result)
        k >>= 1
        if k:
            base = _mat_mul(base, base)
    return result


def _within(v: Sequence[Fraction], y: Sequence[Fraction], delta: Fraction, norm: str) -> bool:
    """Exact test ||v - y|| < delta."""
    if norm == EUCLIDEAN:
        return sum(((a - b) ** 2 for a, b in zip(v, y)), _ZERO) < delta * delta
    if norm == MAX:
        return all(abs(a - b) < delta for a, b in zip(v, y))
    raise ValueError(f"unknown norm: {norm}")


def _norm_upper(v: Sequence[Fraction], norm: str) -> Fraction:
    if norm == EUCLIDEAN:
        return sqrt_upper(sum((a * a for a in v), _ZERO), 64)
    if norm == MAX:
        return max((abs(a) for a in v), default=_ZERO)
    raise ValueError(f"unknown norm: {norm}")


def member_check(
    a: RationalMatrix,
    x: RationalVector,
    y: RationalVector,
    delta: Fraction,
    k: int,
    norm: str = EUCLIDEAN,
) -> bool:
    """Exact predicate ||A^k x - y|| < delta."""
    if k < 0:
        raise ValueError("k must be a natural number")
    rows = _as_fracs(a)
    v = _mat_pow_vec(rows, [Fraction(c) for c in x], k)
    return _within(v, [Fraction(c) for c in y], Fraction(delta), norm)


def _sweep(
    a: RationalMatrix,
    x: RationalVector,
    y: RationalVector,
    delta: Fraction,
    bound: int,
    norm: str,
    cap: int,
) -> Optional[int]:
    """First k in [0, bound] with an exact hit, by incremental iteration."""
    if bound > cap:
        raise ResourceLimitExceeded("witness_cap", f"search bound {bound} exceeds cap {cap}")
    rows = _as_fracs(a)
    ys = [Fraction(c) for c in y]
    v = [Fraction(c) for c in x]
    for k in range(bound + 1):
        if _within(v, ys, delta, norm):
            return k
        if k < bound:
            v = _mat_vec(rows, v)
    return None


def decide_empty(
    a: RationalMatrix,
    x: RationalVector,
    y: RationalVector,
    delta: Fraction,
    cert: GrowthCertificate,
    options: Optional[DecideOptions] = None,
) -> Verdict:
    """Theorem-1 case: ||A^m x|| > c.m for m > N caps the search."""
    options = options or DecideOptions()
    y_up = _norm_upper([Fraction(c) for c in y], cert.norm)
    bound = max(int(math.ceil((delta + y_up) / cert.c)), cert.N)
    hit = _sweep(a, x, y, delta, bound, cert.norm, options.witness_cap)
    if hit is not None:
        return Verdict(VerdictTag.YES, witness=hit, growth=cert)
    return Verdict(VerdictTag.NO, bound=bound, growth=cert)


def contraction_certificate(d: LimitSetDescriptor) -> ContractionCertificate:
    """Certify D(A^k x, S_L) <= s.lambda^k for k > K.

    A^k x equals the S_L point Q D^k v plus the contracting residual
    P R^k z_R, so the distance is at most ||P||.||R^k z_R||, and the
    residual obeys a polynomial-times-exponential envelope.
    """
    if not isinstance(d, Torus):
        raise ValueError("contraction certificate requires a Torus descriptor")
    form, z, norm = d.form, d.z, d.norm
    s = embedded_matrix_norm_upper(form.P, norm)

    blocks = []
    for bc in d.classifications:
        if bc.case != BlockCase.CASE_II_TO_ZERO:
            continue
        blk = form.blocks[bc.block_index]
        comp = z[blk.start : blk.start + blk.size]
        rho_b = _contracting_upper(blk.eigenvalue)
        z_b = sum((c.eval_box(Fraction(1, 64)).abs().hi for c in comp), _ZERO)
        blocks.append((blk.size, rho_b, z_b))

    if not blocks:
        return ContractionCertificate(
            s=s,
            lam=Fraction(1, 2),
            K=0,
            rho=_ZERO,
            envelope_coeff=_ZERO,
            envelope_degree=0,
            zero_envelope=True,
            norm=norm,
        )

    t_max = max(t for t, _, _ in blocks)
    rho = max(r for _, r, _ in blocks)
    if norm == EUCLIDEAN:
        w = sum(
            (sqrt_upper(Fraction(t), 32) * zb / r ** (t - 1) for t, r, zb in blocks),
            _ZERO,
        )
    else:
        w = max(zb / r ** (t - 1) for t, r, zb in blocks)
    lam = (rho + 1) / 2

    # least K with W.K^(T-1).rho^K <= lambda^K and monotone domination after
    deg = t_max - 1
    k = 1
    rho_k, lam_k = rho, lam
    while True:
        envelope = w * Fraction(k) ** deg * rho_k
        monotone = Fraction(k + 1) ** deg * rho <= Fraction(k) ** deg * lam
        if envelope <= lam_k and monotone:
            break
        k += 1
        rho_k *= rho
        lam_k *= lam
    return ContractionCertificate(
        s=s,
        lam=lam,
        K=k,
        rho=rho,
        envelope_coeff=w,
        envelope_degree=deg,
        zero_envelope=False,
        norm=norm,
    )


def _contracting_upper(lam) -> Fraction:
    """Rational rho in [1/2, 1) with |lam| <= rho; requires |lam| < 1."""
    width = Fraction(1, 4)
    while True:
        hi = lam.refine(width).abs().hi
        if hi < 1:
            return max(hi, Fraction(1, 2))
        width /= 8


def decide_nonempty(
    a: RationalMatrix,
    x: RationalVector,
    y: RationalVector,
    delta: Fraction,
    d: LimitSetDescriptor,
    gap: GapResult,
    options: Optional[DecideOptions] = None,
) -> Verdict:
    """Theorem-2 case: dispatch on the sign of delta - D(y, S_L)."""
    options = options or DecideOptions()
    if gap.outcome == GapOutcome.EXHAUSTED:
        raise ValueError("gap must be decisive; the caller handles EXHAUSTED")
    if not isinstance(d, Torus):
        raise ValueError("decide_nonempty requires a Torus descriptor")

    if gap.outcome == GapOutcome.RADIUS_EXCEEDS_D:
        # infinitely many hits exist; enumerate until one is found
        rows = _as_fracs(a)
        ys = [Fraction(c) for c in y]
        v = [Fraction(c) for c in x]
        for k in range(options.witness_cap + 1):
            if _within(v, ys, delta, d.norm):
                return Verdict(VerdictTag.YES, witness=k, gap=gap)
            v = _mat_vec(rows, v)
        raise ResourceLimitExceeded(
            "witness_cap", f"no witness within {options.witness_cap} steps"
        )

    cert = contraction_certificate(d)
    if cert.zero_envelope:
        bound = 0
    else:
        # least k with s.lambda^k <= eta, then at least K
        k = 0
        val = cert.s
        while val > gap.eta:
            k += 1
            val *= cert.lam
        bound = max(cert.K, k)
    hit = _sweep(a, x, y, delta, bound, d.norm, options.witness_cap)
    if hit is not None:
        return Verdict(VerdictTag.YES, witness=hit, contraction=cert, gap=gap)
    return Verdict(VerdictTag.NO, bound=bound, contraction=cert, gap=gap)


def decide(
    a: RationalMatrix,
    x: RationalVector,
    y: RationalVector,
    delta,
    norm: str = EUCLIDEAN,
    options: Optional[DecideOptions] = None,
) -> Verdict:
    """Decide whether some orbit point A^k x enters the open delta-ball at y."""
    options = options or DecideOptions()
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if len(x) != n or len(y) != n:
        raise ValueError("vector dimensions must match the matrix")
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if norm not in (EUCLIDEAN, MAX):
        raise ValueError(f"unknown norm: {norm}")

    d = limit_set(a, x, norm)
    if isinstance(d, Empty):
        verdict = decide_empty(a, x, y, delta, d.certificate, options)
    else:
        gap = bound_gap(d, y, delta, j_max=options.max_j, net_cap=options.net_cap)
        if gap.outcome == GapOutcome.EXHAUSTED:
            return Verdict(
                VerdictTag.UNDECIDED_BOUNDARY,
                gap=gap,
                distance_bound=gap.bound,
                diagnostics={"reason": "delta sits inside the tightest distance bracket"},
            )
        verdict = decide_nonempty(a, x, y, delta, d, gap, options)
        verdict.distance_bound = gap.bound
    if verdict.tag == VerdictTag.YES:
        # unconditional post-check of every YES witness
        if not member_check(a, x, y, delta, verdict.witness, norm):
            raise ArithmeticError("witness failed exact re-verification")
    return verdict
