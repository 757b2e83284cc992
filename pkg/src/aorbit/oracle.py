"""Independent brute-force referee for cross-validating verdicts.

Everything here recomputes orbit facts from scratch: exact iterated
products for short horizons, and for deep no-hit verification a cascade
of certified arguments — exact sweep with cycle detection, geometric
escape bounds from a dominant left eigenvector or from a contracting
power of the matrix, and a fixed-point integer enclosure sweep with a
rigorously propagated error budget.  Shares only the `arith` layer
with the decision engine; spectral data is recomputed independently
via sympy.

All comparisons are exact; the enclosure sweep only screens candidates,
every potential hit is confirmed with exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import sympy

from .arith.algebraic import (
    EQUAL,
    GREATER,
    AlgebraicNumber,
    cmp_modulus_one,
    is_root_of_unity,
)
from .arith.numberfield import NumberField, mat_nullspace
from .arith.polynomials import Polynomial, poly_xgcd
from .arith.rationals import sqrt_lower, sqrt_upper

_ZERO = Fraction(0)
_ONE = Fraction(1)

EUCLIDEAN = "euclidean"
MAX = "max"

DEFAULT_BIT_BUDGET = 10_000


class OracleBudgetError(Exception):
    """The oracle could not certify the requested horizon."""

    def __init__(self, k: int, detail: str = ""):
        self.k = k
        msg = f"oracle budget exceeded at k={k}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


@dataclass(frozen=True)
class OrbitPrefix:
    points: Tuple[Tuple[Fraction, ...], ...]
    horizon: int


def orbit_prefix(a, x, horizon: int) -> OrbitPrefix:
    """points[k] = A^k x exactly, k = 0..horizon."""
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    rows = [[Fraction(v) for v in row] for row in a]
    v = tuple(Fraction(c) for c in x)
    pts = [v]
    for _ in range(horizon):
        v = tuple(sum((r[i] * v[i] for i in range(len(v))), _ZERO) for r in rows)
        pts.append(v)
    return OrbitPrefix(points=tuple(pts), horizon=horizon)


# -- integer-scaled exact orbit sweep --------------------------------------


def _int_setup(a, x, y, delta):
    """Clear denominators: A = N/dA, x = xn/dx, y = yn/dy, delta = dn/dd."""
    import math

    n = len(a)
    dA = 1
    for row in a:
        for v in row:
            dA = dA * Fraction(v).denominator // math.gcd(dA, Fraction(v).denominator)
    N = [[int(Fraction(v) * dA) for v in row] for row in a]
    dx = 1
    for v in x:
        dx = dx * Fraction(v).denominator // math.gcd(dx, Fraction(v).denominator)
    xn = [int(Fraction(v) * dx) for v in x]
    dy = 1
    for v in y:
        dy = dy * Fraction(v).denominator // math.gcd(dy, Fraction(v).denominator)
    yn = [int(Fraction(v) * dy) for v in y]
    d = Fraction(delta)
    return n, N, dA, xn, dx, yn, dy, d


def _exact_hit(diffs: List[int], scale: int, delta: Fraction, norm: str) -> bool:
    """Exact ||diffs/scale|| < delta."""
    if norm == EUCLIDEAN:
        lhs = sum(di * di for di in diffs) * delta.denominator**2
        rhs = delta.numerator**2 * scale * scale
        return lhs < rhs
    return all(abs(di) * delta.denominator < delta.numerator * scale for di in diffs)


def _sweep_exact(
    a,
    x,
    y,
    delta,
    k_max: int,
    norm: str = EUCLIDEAN,
    bit_budget: Optional[int] = DEFAULT_BIT_BUDGET,
    detect_cycles: bool = True,
) -> Tuple[Optional[int], Optional[int]]:
    """(hit_k, certified_k): first exact hit, or the largest k for which
    no-hit is certified (k_max when complete, less when the bit budget
    fired).  Cycle detection extends certification to k_max when the
    exact state repeats."""
    n, N, dA, w, dx, yn, dy, delta = _int_setup(a, x, y, delta)
    # exact cycles require a constant denominator (T strictly grows otherwise)
    seen = {} if detect_cycles and dA == 1 else None
    T = dx  # common denominator of A^k x is dx * dA^k
    for k in range(k_max + 1):
        scale = T * dy
        diffs = [w[i] * dy - yn[i] * T for i in range(n)]
        # cheap sound screen: |diff| >= 2^(bl-1); hit needs max|diff| < thr
        thr_hi_bits = (
            delta.numerator.bit_length()
            + scale.bit_length()
            - delta.denominator.bit_length()
            + 2
        )
        if all(di == 0 or di.bit_length() - 1 >= thr_hi_bits for di in diffs):
            possible = all(di == 0 for di in diffs)
        else:
            possible = True
        if possible and _exact_hit(diffs, scale, delta, norm):
            return k, None
        if k == k_max:
            break
        if seen is not None:
            key = tuple(w)
            if key in seen:
                return None, k_max  # exact cycle: all future states repeat
            seen[key] = k
        if bit_budget is not None and max(
            (abs(wi).bit_length() for wi in w), default=0
        ) > bit_budget:
            return None, k - 1 if k > 0 else None
        w = [sum(N[i][j] * w[j] for j in range(n)) for i in range(n)]
        T *= dA
    return None, k_max


def brute_force_decide(a, x, y, delta, k_max: int, norm: str = EUCLIDEAN):
    """First k <= k_max with an exact hit, else None (never a NO claim)."""
    hit, certified = _sweep_exact(
        a, x, y, delta, k_max, norm, bit_budget=None, detect_cycles=False
    )
    return hit


def empirical_min_distance(a, x, y, k_range: Iterable[int], norm: str = EUCLIDEAN):
    """(min ||A^k x - y||, argmin) over the range, by exact squared-norm
    comparison; the returned value is exact when rational, otherwise an
    outward-rounded 128-bit upper bound."""
    ks = sorted(set(k_range))
    if not ks:
        raise ValueError("k_range must be nonempty")
    rows = [[Fraction(v) for v in row] for row in a]
    ys = [Fraction(v) for v in y]
    v = [Fraction(c) for c in x]
    best = None
    best_k = None
    pos = 0
    for k in range(ks[-1] + 1):
        if k == ks[pos]:
            pos += 1
            if norm == EUCLIDEAN:
                key = sum(((vi - yi) ** 2 for vi, yi in zip(v, ys)), _ZERO)
            else:
                key = max((abs(vi - yi) for vi, yi in zip(v, ys)), default=_ZERO)
            if best is None or key < best:
                best, best_k = key, k
        if pos == len(ks):
            break
        v = [sum((r[i] * v[i] for i in range(len(v))), _ZERO) for r in rows]
    if norm == MAX:
        return best, best_k
    num_r = _exact_sqrt(best.numerator)
    den_r = _exact_sqrt(best.denominator)
    if num_r is not None and den_r is not None:
        return Fraction(num_r, den_r), best_k
    return sqrt_upper(best, 128), best_k


def _exact_sqrt(n: int) -> Optional[int]:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


# -- independent spectral data ---------------------------------------------


def _char_factors(a) -> List[Tuple[Polynomial, int]]:
    """Irreducible monic factors of the characteristic polynomial,
    computed independently via sympy."""
    t = sympy.Symbol("t")
    m = sympy.Matrix([[sympy.Rational(Fraction(v)) for v in row] for row in a])
    cp = m.charpoly(t).as_expr()
    _, factors = sympy.factor_list(sympy.Poly(cp, t))
    out = []
    for f, mult in factors:
        p = sympy.Poly(f, t).monic()
        coeffs = [Fraction(sympy.Rational(c)) for c in reversed(p.all_coeffs())]
        out.append((Polynomial.of(*coeffs), int(mult)))
    return out


def _norm2_upper(v: Sequence[Fraction]) -> Fraction:
    return sqrt_upper(sum((c * c for c in v), _ZERO), 64)


def _escape_horizon(a, x, y, delta, norm: str) -> Optional[int]:
    """A k0 past which exact hits are provably impossible, or None.

    Expansion: a left eigenvector u with |lambda| > 1 and u.x != 0 forces
    ||A^k x||_2 >= |lambda|^k |u.x| / ||u||_2 -> infinity past any hit
    threshold.  Contraction: if every eigenvalue has modulus < 1 and the
    target ball excludes the origin, the orbit eventually stays too small.
    """
    n = len(a)
    x = [Fraction(v) for v in x]
    y = [Fraction(v) for v in y]
    delta = Fraction(delta)
    factors = _char_factors(a)

    # classify each root's modulus against 1 (exact at equality)
    all_inside = True
    expanding: List[Tuple[Polynomial, int]] = []  # (factor, root_index)
    for f, _ in factors:
        for idx in range(f.degree):
            root = AlgebraicNumber(f, idx)
            if root.is_zero:
                continue  # modulus 0: strictly inside the unit disk
            cmp1 = cmp_modulus_one(root)
            if cmp1 == GREATER:
                expanding.append((f, idx))
                all_inside = False
            elif cmp1 == EQUAL:
                all_inside = False

    if norm == EUCLIDEAN:
        y_up = _norm2_upper(y)
        sqrt_n_up = sqrt_upper(Fraction(n), 32)
    else:
        y_up = max((abs(c) for c in y), default=_ZERO)
        sqrt_n_up = sqrt_upper(Fraction(n), 32)

    best: Optional[int] = None
    done_factors = set()
    for f, idx in expanding:
        if f.coeffs in done_factors:
            continue
        done_factors.add(f.coeffs)
        fld = NumberField(f)
        # left nullspace of (A - tI) = nullspace of its transpose
        m = [
            [fld.element(Fraction(a[j][i])) for j in range(n)] for i in range(n)
        ]
        for i in range(n):
            m[i][i] = m[i][i] - fld.generator()
        basis = mat_nullspace(m, fld)
        for u in basis:
            ip = fld.zero()
            for ui, xi in zip(u, x):
                ip = ip + ui.scale(xi)
            if ip.is_zero:
                continue  # u.x = 0 exactly; this eigenvector sees nothing
            for g, jdx in expanding:
                if g.coeffs != f.coeffs:
                    continue
                lam = AlgebraicNumber(f, jdx)
                lam_lo = _modulus_lower(lam, above=_ONE)
                ip_lo = _value_lower(ip, jdx)
                u_up = _vector2_upper(u, jdx)
                # no hit once lam_lo^k * ip_lo / u_up > sqrt(n)*(||y|| + delta)
                target = sqrt_n_up * (y_up + delta) * u_up
                k0, val = 0, ip_lo
                while val <= target:
                    k0 += 1
                    val *= lam_lo
                    if k0 > 10_000_000:
                        k0 = None
                        break
                if k0 is not None and (best is None or k0 < best):
                    best = k0
    if best is not None:
        return best

    if all_inside:
        # contraction: need the ball to exclude the origin, exactly
        if norm == EUCLIDEAN:
            sep = sum((c * c for c in y), _ZERO) > delta * delta
        else:
            sep = max((abs(c) for c in y), default=_ZERO) > delta
        if not sep:
            return None
        gap_lo = _ball_origin_gap_lower(y, delta, norm)
        step = _contracting_power(a)
        if step is None:
            return None
        m, s_up = step
        # C = max ||A^r x||_2 over r < m, upper bound
        rows = [[Fraction(v) for v in row] for row in a]
        v = list(x)
        c_up = _norm2_upper(v)
        for _ in range(m - 1):
            v = [sum((r[i] * v[i] for i in range(len(v))), _ZERO) for r in rows]
            c_up = max(c_up, _norm2_upper(v))
        j, val = 0, c_up
        while val >= gap_lo:
            j += 1
            val *= s_up
            if j > 10_000_000:
                return None
        return j * m
    return None


def _ball_origin_gap_lower(y, delta, norm: str) -> Fraction:
    """Positive lower bound on distance from the origin to the delta-ball
    at y, measured in the 2-norm (which lower-bounds the max norm gap
    requirement since ||v||_2 >= ||v||_inf)."""
    if norm == EUCLIDEAN:
        return sqrt_lower(sum((c * c for c in y), _ZERO), 64) - delta
    # max norm: a hit needs ||v - y||_inf < delta, so ||v||_inf > ||y||_inf - delta;
    # ||v||_2 >= ||v||_inf gives the 2-norm threshold
    return max(abs(c) for c in y) - delta


def _contracting_power(a) -> Optional[Tuple[int, Fraction]]:
    """(m, s) with ||A^m||_2 <= s < 1, via the Gershgorin row bound on the
    Gram matrix of A^m; tries m = 1, 2, 4, ..., 64."""
    n = len(a)
    rows = [[Fraction(v) for v in row] for row in a]
    power = [row[:] for row in rows]
    m = 1
    while m <= 64:
        gram = [
            [
                sum((power[k][i] * power[k][j] for k in range(n)), _ZERO)
                for j in range(n)
            ]
            for i in range(n)
        ]
        lam_up = max(sum(abs(vv) for vv in row) for row in gram)
        if lam_up < 1:
            return m, sqrt_upper(lam_up, 64)
        power = [
            [sum((power[i][k] * power[k][j] for k in range(n)), _ZERO) for j in range(n)]
            for i in range(n)
        ]
        m *= 2
    return None


def _modulus_lower(lam: AlgebraicNumber, above: Fraction) -> Fraction:
    width = Fraction(1, 16)
    while True:
        lo = lam.refine(width).abs().lo
        if lo > above:
            # one extra refinement sharpens the geometric escape rate
            return max(lo, lam.refine(width / 16).abs().lo)
        width /= 8


def _value_lower(elem, root_index: int) -> Fraction:
    """Positive lower bound on |sigma_j(elem)| for a nonzero field element
    (every embedding of a nonzero element is nonzero)."""
    width = Fraction(1, 16)
    while True:
        lo = elem.eval_box(root_index, width).abs().lo
        if lo > 0:
            return lo
        width /= 8


def _vector2_upper(u, root_index: int) -> Fraction:
    width = Fraction(1, 64)
    total = sum(
        (ui.eval_box(root_index, width).abs_sq().hi for ui in u), _ZERO
    )
    return sqrt_upper(total, 64)


# -- fixed-point enclosure sweep -------------------------------------------

_SCALE_BITS = 128
_SCALE = 1 << _SCALE_BITS


def _enclosure_sweep(a, x, y, delta, k_max: int, norm: str) -> Optional[int]:
    """Screen [0, k_max] with integer fixed-point iterates whose error is
    rigorously budgeted; every surviving candidate is confirmed exactly.
    Returns the first exact hit or None; raises OracleBudgetError when the
    matrix is not certifiably non-expanding enough for the error budget.

    Applicability: some power A^m must satisfy ||A^m||_2 <= 1 + 2^-20.
    The sweep runs m interleaved sequences stepped by A^m, one per
    residue class mod m, so every k is screened.
    """
    n = len(a)
    rows = [[Fraction(v) for v in row] for row in a]
    step = _near_isometric_power(rows)
    if step is None:
        raise OracleBudgetError(0, "no certifiably non-expanding power")
    m, power, s_up = step

    # integer form of A^m at fixed-point scale
    pm = [[round(v * _SCALE) for v in row] for row in power]
    # per-step error: ||A^m|| * E + matrix rounding * ||w|| + arithmetic rounding
    steps = k_max // m + 1
    # ||A^j x||_2 stays <= s_up^steps * C with C = max prefix norm; bound s_up^steps
    growth = _pow_upper(s_up, steps)

    prefix = orbit_prefix(a, x, m - 1)
    c_up = max(_norm2_upper(list(p)) for p in prefix.points) + _ONE
    w_bound = growth * c_up  # 2-norm bound on every true iterate
    per_step = (
        Fraction(n, _SCALE) * w_bound  # matrix entry rounding times ||w||
        + Fraction(n + 1, _SCALE)  # accumulation and final rounding
    )
    err = growth * Fraction(steps) * per_step  # uniform error bound, 2-norm
    if err >= Fraction(delta) / 4:
        raise OracleBudgetError(0, "error budget too large for this horizon")

    ys = [Fraction(v) for v in y]
    yi = [round(v * _SCALE) for v in ys]
    thr = Fraction(delta) + err + Fraction(n + 2, _SCALE)
    thr_int = int(thr * _SCALE) + 1

    hits: List[int] = []
    for r in range(m):
        if r > k_max:
            break
        w = [round(v * _SCALE) for v in prefix.points[r]]
        k = r
        while k <= k_max:
            # screen: a true hit forces max|w_i - y_i| < thr at scale
            if all(abs(w[i] - yi[i]) < thr_int for i in range(n)):
                hits.append(k)
            k += m
            if k > k_max:
                break
            w = [
                sum(pm[i][j] * w[j] for j in range(n)) >> _SCALE_BITS
                for i in range(n)
            ]
    if len(hits) > 64:
        # each confirmation is an exact matrix power; a flood of screen
        # survivors means the orbit hugs the ball boundary and no fixed
        # precision can separate it
        raise OracleBudgetError(min(hits), "too many enclosure candidates")
    for k in sorted(hits):
        diffs_num, scale = _exact_point_diff(a, x, ys, k)
        if _exact_hit(diffs_num, scale, Fraction(delta), norm):
            return k
    return None


def _near_isometric_power(rows) -> Optional[Tuple[int, List[List[Fraction]], Fraction]]:
    """(m, A^m, s) with ||A^m||_2 <= s <= 1 + 2^-20, if one exists for
    m in {1, 2, 4, ..., 64}."""
    n = len(rows)
    tol = 1 + Fraction(1, 1 << 20)
    power = [row[:] for row in rows]
    m = 1
    while m <= 64:
        gram = [
            [sum((power[k][i] * power[k][j] for k in range(n)), _ZERO) for j in range(n)]
            for i in range(n)
        ]
        lam_up = max(sum(abs(v) for v in row) for row in gram)
        s_up = sqrt_upper(lam_up, 64)
        if s_up <= tol:
            return m, power, s_up
        nxt = [
            [sum((power[i][k] * power[k][j] for k in range(n)), _ZERO) for j in range(n)]
            for i in range(n)
        ]
        power = nxt
        m *= 2
    return None


def _pow_upper(s: Fraction, k: int) -> Fraction:
    """Upper bound on s^k with limited-precision rounding up per squaring."""
    result = _ONE
    base = s
    while k:
        if k & 1:
            result = _round_up(result * base)
        k >>= 1
        if k:
            base = _round_up(base * base)
    return result


def _round_up(q: Fraction, bits: int = 96) -> Fraction:
    scale = 1 << bits
    return Fraction(-((-q.numerator * scale) // q.denominator), scale)


def _exact_point_diff(a, x, ys, k: int):
    """Integer numerators of A^k x - y over a common scale, by binary
    matrix powering with cleared denominators (no gcd normalization)."""
    n, N, dA, xn, dx, yn, dy, _ = _int_setup(a, x, ys, _ONE)
    mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = [row[:] for row in N]
    kk = k
    while kk:
        if kk & 1:
            mat = [
                [sum(mat[i][t] * base[t][j] for t in range(n)) for j in range(n)]
                for i in range(n)
            ]
        kk >>= 1
        if kk:
            base = [
                [sum(base[i][t] * base[t][j] for t in range(n)) for j in range(n)]
                for i in range(n)
            ]
    dpow = dA**k
    v = [sum(mat[i][j] * xn[j] for j in range(n)) for i in range(n)]
    scale = dx * dpow * dy
    diffs = [v[i] * dy - yn[i] * dx * dpow for i in range(n)]
    return diffs, scale


# -- complete scalar decision ------------------------------------------------

_SCAN_CAP = 1_000_000


def _scalar_sweep(a, x, y, delta, k_max: int) -> Optional[int]:
    """Complete exact decision for 1x1 instances.  The orbit magnitudes
    |lam^k x| are strictly monotone (or constant), so the indices that can
    land in the target interval form a window scanned exactly; beyond it
    no-hit follows from monotonicity.  Returns the first hit in [0, k_max]
    or None, certified."""
    lam = Fraction(a[0][0])
    x0 = Fraction(x[0])
    y0 = Fraction(y[0])
    delta = Fraction(delta)

    def hit(v: Fraction) -> bool:
        return abs(v - y0) < delta

    if x0 == 0:
        return 0 if hit(_ZERO) else None
    if hit(x0):
        return 0
    if k_max == 0:
        return None
    if lam == 0:
        return 1 if hit(_ZERO) else None
    if abs(lam) == 1:
        # period <= 2: k = 0 checked above
        return 1 if hit(lam * x0) else None

    lo = abs(y0) - delta  # |v_k| <= lo or >= lo + 2*delta excludes a hit
    v = x0
    if abs(lam) > 1:
        # magnitudes strictly increase; past |v| >= |y0| + delta no hit
        hi = abs(y0) + delta
        for k in range(1, k_max + 1):
            v *= lam
            if abs(v) >= hi:
                return None
            if hit(v):
                return k
            if k > _SCAN_CAP:
                raise OracleBudgetError(k, "scalar window scan too long")
        return None

    # |lam| < 1: magnitudes strictly decrease to 0
    if lo > 0:
        # only |v_k| in (lo, |y0|+delta) can hit; ends once |v| <= lo
        for k in range(1, k_max + 1):
            v *= lam
            if abs(v) <= lo:
                return None
            if hit(v):
                return k
            if k > _SCAN_CAP:
                raise OracleBudgetError(k, "scalar window scan too long")
        return None
    if lo < 0:
        # 0 is interior to the target interval: all small-enough v_k hit
        for k in range(1, k_max + 1):
            v *= lam
            if hit(v):
                return k
            if k > _SCAN_CAP:
                raise OracleBudgetError(k, "scalar window scan too long")
        return None
    # |y0| = delta exactly: the interval is (0, 2*delta) or (-2*delta, 0),
    # so a hit needs sign(v_k) = sign(y0) and |v_k| < 2*delta
    want_pos = y0 > 0
    if lam > 0 and (x0 > 0) != want_pos:
        return None  # sign is constant and wrong forever
    for k in range(1, k_max + 1):
        v *= lam
        if (v > 0) == want_pos and abs(v) < 2 * delta:
            return k  # |v_k| in (0, 2*delta) on the right side: exact hit
        if abs(v) >= 2 * delta:
            continue
        if lam > 0:
            return None  # right magnitude range but sign never matches
        if k > _SCAN_CAP:
            raise OracleBudgetError(k, "scalar window scan too long")
    return None


# -- fixed-point tail certification ------------------------------------------

_INAPPLICABLE = object()


def _fixed_point_tail(a, x, y, delta, k_max: int, norm: str):
    """No-hit certification when every eigenvalue lies in the closed unit
    disk and the unit-modulus ones are roots of unity.  For r = lcm of the
    orders, A^r splits rationally into its fixed part (a spectral projector
    P, a polynomial in A^r) plus a contracting remainder, so each residue
    class k = j (mod r) converges geometrically to the rational point
    P A^j x.  Exact hits are confined to a computable prefix, swept exactly.

    Returns the first hit in [0, k_max], None (certified no-hit), or the
    _INAPPLICABLE sentinel when the spectral shape does not fit."""
    n = len(a)
    delta = Fraction(delta)
    import math

    r = 1
    for f, _ in _char_factors(a):
        for idx in range(f.degree):
            root = AlgebraicNumber(f, idx)
            if root.is_zero:
                continue
            cmp1 = cmp_modulus_one(root)
            if cmp1 == GREATER:
                return _INAPPLICABLE
            if cmp1 == EQUAL:
                order = is_root_of_unity(root)
                if order is None:
                    return _INAPPLICABLE
                r = r * order // math.gcd(r, order)
    if r > 360:
        return _INAPPLICABLE

    rows = [[Fraction(v) for v in row] for row in a]
    ident = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]

    def mat_mul_q(p, q):
        return [
            [sum((p[i][t] * q[t][j] for t in range(n)), _ZERO) for j in range(n)]
            for i in range(n)
        ]

    m_r = ident
    for _ in range(r):
        m_r = mat_mul_q(m_r, rows)

    # multiplicity of the eigenvalue 1 in A^r
    cf = _char_factors(m_r)
    lin = Polynomial.of(Fraction(-1), _ONE)  # t - 1
    e = sum(mult for f, mult in cf if f == lin)
    if e == 0:
        proj = [[_ZERO] * n for _ in range(n)]
    else:
        # spectral projector: q(M) with q = 1 mod (t-1)^e, q = 0 mod rest
        g = Polynomial.one()
        for _ in range(e):
            g = g * lin
        h = Polynomial.one()
        for f, mult in cf:
            if f == lin:
                continue
            for _ in range(mult):
                h = h * f
        gcd, s, t = poly_xgcd(g, h)
        if gcd.degree != 0:
            return _INAPPLICABLE
        q = t * h  # monic gcd of coprime factors is 1, so q = 1 - s*g
        proj = [[_ZERO] * n for _ in range(n)]
        for c in reversed(q.coeffs):
            proj = mat_mul_q(proj, m_r)
            for i in range(n):
                proj[i][i] += c
    # the tail argument needs the fixed part to be genuinely fixed
    if mat_mul_q(m_r, proj) != proj:
        return _INAPPLICABLE
    resid = [
        [m_r[i][j] - proj[i][j] for j in range(n)] for i in range(n)
    ]
    step = _contracting_power(resid)
    if step is None:
        return _INAPPLICABLE
    mm, s_up = step

    ys = [Fraction(v) for v in y]
    prefix = orbit_prefix(a, x, r - 1)
    horizon = 0
    for j in range(r):
        w = list(prefix.points[j])
        p = [sum((proj[i][t] * w[t] for t in range(n)), _ZERO) for i in range(n)]
        z = [wi - pi for wi, pi in zip(w, p)]
        # C bounds ||resid^i z||_2 for i < mm, so ||M^t z||_2 <= C s^(t//mm)
        c_up = _ZERO
        zz = z
        for _ in range(mm):
            c_up = max(c_up, _norm2_upper(zz))
            zz = [
                sum((resid[i][t] * zz[t] for t in range(n)), _ZERO)
                for i in range(n)
            ]
        diffs = [pi - yi for pi, yi in zip(p, ys)]
        dist2 = sum((d * d for d in diffs), _ZERO)
        if norm == EUCLIDEAN:
            inside = dist2 < delta * delta
            boundary = dist2 == delta * delta
        else:
            dist_inf = max((abs(d) for d in diffs), default=_ZERO)
            inside = dist_inf < delta
            boundary = dist_inf == delta
        if boundary:
            if c_up == 0:
                continue  # constant class exactly on the sphere: never a hit
            return _INAPPLICABLE
        if c_up == 0:
            # constant class: strictly inside means k = j already hits
            horizon = max(horizon, j) if inside else horizon
            continue
        t_steps, val = 0, c_up
        if inside:
            # hits are guaranteed once the tail is below the interior margin
            if norm == EUCLIDEAN:
                margin = delta - sqrt_upper(dist2, 96)
            else:
                margin = delta - dist_inf
            while val >= margin:
                t_steps += mm
                val *= s_up
                if t_steps > 10_000_000:
                    return _INAPPLICABLE
        else:
            # no hit once tail + delta <= distance (squared, exactly)
            if norm == EUCLIDEAN:
                while (val + delta) ** 2 > dist2:
                    t_steps += mm
                    val *= s_up
                    if t_steps > 10_000_000:
                        return _INAPPLICABLE
            else:
                while val + delta > dist_inf:
                    t_steps += mm
                    val *= s_up
                    if t_steps > 10_000_000:
                        return _INAPPLICABLE
        horizon = max(horizon, j + r * t_steps)
    horizon = min(horizon, k_max)
    if horizon > 100_000:
        return _INAPPLICABLE
    hit, certified = _sweep_exact(
        a, x, y, delta, horizon, norm, bit_budget=None, detect_cycles=False
    )
    return hit


def verify_no_hits(
    a,
    x,
    y,
    delta,
    k_max: int,
    norm: str = EUCLIDEAN,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> Optional[int]:
    """Certify the absence of exact hits over [0, k_max]: returns None when
    zero hits are certified, the first hit k when one exists, and raises
    OracleBudgetError when no tactic covers the horizon.

    Cascade: scalar instances are decided completely by window scanning;
    a geometric escape bound (expansion or total contraction) reduces the
    horizon to a short exact sweep; otherwise an exact sweep with cycle
    detection runs under the bit budget; otherwise the fixed-point tail
    argument or the fixed-point enclosure sweep covers the full horizon.
    """
    if len(a) == 1:
        return _scalar_sweep(a, x, y, delta, k_max)
    k0 = _escape_horizon(a, x, y, delta, norm)
    if k0 is not None and k0 <= k_max:
        hit, certified = _sweep_exact(
            a, x, y, delta, k0, norm, bit_budget=None, detect_cycles=False
        )
        return hit

    hit, certified = _sweep_exact(a, x, y, delta, k_max, norm, bit_budget=bit_budget)
    if hit is not None:
        return hit
    if certified == k_max:
        return None
    resume = 0 if certified is None else certified + 1
    result = _fixed_point_tail(a, x, y, delta, k_max, norm)
    if result is not _INAPPLICABLE:
        return result
    try:
        return _enclosure_sweep(a, x, y, delta, k_max, norm)
    except OracleBudgetError:
        raise OracleBudgetError(resume, "no remaining tactic covers the horizon")
