"""Distance from y to the limit set: certified bounds and the gap test.

For a nonempty limit set, D(y, S_L) = min over k < N of d_k, where d_k
is the minimum of f_k(mu) = ||y - point(mu)|| over the free phases of
the family S_L^k.  Each free phase lives on the unit circle, which is
parameterized by exact rational points via the tangent-half-angle map
mu(tau) = ((1 - tau^2) + 2i.tau) / (1 + tau^2) on two sign charts, so
every probed phase is exactly unimodular and all arithmetic stays
rational.  d_k is bracketed by certified branch-and-bound: interval
evaluation over phase arcs yields lower bounds, evaluation at rational
chart points yields upper bounds, and arcs are split best-first until
the bracket is tighter than the requested tolerance.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .arith.intervals import ComplexBox, Interval
from .errors import ResourceLimitExceeded
from .limitset import LimitSetDescriptor, Torus, TorusFamily, torus_family
from .spectral import EUCLIDEAN, MAX, Embedded, boxes_norm_interval

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_NET_CAP = 5_000


@dataclass(frozen=True)
class DistanceBound:
    """lower <= D(y, S_L) <= upper with upper - lower < 2^-level."""

    lower: Fraction
    upper: Fraction
    level: int


class GapOutcome(Enum):
    RADIUS_EXCEEDS_D = "radius_exceeds_d"
    RADIUS_BELOW_D = "radius_below_d"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class GapResult:
    """Signed outcome of the bisection against delta.

    RADIUS_EXCEEDS_D: eta is a positive lower bound on delta - D.
    RADIUS_BELOW_D:   eta is a positive lower bound on D - delta.
    EXHAUSTED:        the level cap fired with delta still inside the
                      bracket (the boundary case), `bound` is the
                      tightest bracket achieved.
    """

    outcome: GapOutcome
    eta: Fraction
    level: int
    bound: Optional[DistanceBound] = None


# -- rational circle parameterization ------------------------------------

Arc = Tuple[int, Interval]  # (sign chart +-1, tau interval within [-1, 1])


def _mu_point(sign: int, tau: Fraction) -> ComplexBox:
    """Exact rational point on the unit circle (tangent half-angle)."""
    den = 1 + tau * tau
    return ComplexBox.point(sign * (1 - tau * tau) / den, sign * 2 * tau / den)


def _mu_box(arc: Arc) -> ComplexBox:
    """Enclosure of all circle points of the arc."""
    sign, tau = arc
    t2 = tau.square()
    inv = (Interval.point(_ONE) + t2).recip()
    re = (Interval.point(_ONE) - t2) * inv
    im = tau.scale(Fraction(2)) * inv
    box = ComplexBox(re, im)
    return box if sign > 0 else -box


# -- interval geometry of one torus family --------------------------------


class FamilyGeometry:
    """Interval evaluator for f_k over the phases of one family S_L^k.

    A family point is base + sum over free pairs of (mu.G_p + conj(mu).H_p)
    where base collects the rigid-class contributions and G_p, H_p are the
    per-pair coordinate vectors fixed_s . (column s of Q); conjugate
    classes share one phase because the underlying orbit is real.
    """

    def __init__(self, d: Torus, y: Sequence[Fraction], family: TorusFamily):
        self.norm = d.norm
        self.h = family.h
        self.y = [Fraction(v) for v in y]
        form = d.form
        self.n = form.n
        offsets = []
        off = 0
        for fd in form.factors:
            offsets.append(off)
            off += fd.fld.degree * fd.multiplicity

        def column_terms(idx: int) -> List[Embedded]:
            sc = family.coords[idx]
            fd = form.factors[sc.factor_index]
            local = sc.coord - offsets[sc.factor_index] - sc.root_index * fd.multiplicity
            fx = family.fixed[idx]
            return [
                Embedded(fx.elem * fd.chain_columns[i][local], sc.root_index)
                for i in range(self.n)
            ]

        rigid_classes = {ci for ci, cls in enumerate(family.classes) if cls.rigid}
        self.base_terms: List[List[Embedded]] = [
            column_terms(i)
            for i, sc in enumerate(family.coords)
            if sc.class_index in rigid_classes
        ]
        self.pair_terms: List[Tuple[List[List[Embedded]], List[List[Embedded]]]] = []
        for cj, ck in family.free_pairs:
            g = [
                column_terms(i)
                for i, sc in enumerate(family.coords)
                if sc.class_index == cj
            ]
            hh = [
                column_terms(i)
                for i, sc in enumerate(family.coords)
                if sc.class_index == ck
            ]
            self.pair_terms.append((g, hh))
        self._sum_cache: dict = {}

    def _sums(self, width: Fraction):
        """Per-coordinate enclosures of the base and pair contributions,
        cached by a power-of-two quantization of the requested width."""
        key = _ONE
        while key > width:
            key /= 2
        cached = self._sum_cache.get(key)
        if cached is not None:
            return cached

        def sum_terms(term_lists: List[List[Embedded]], i: int) -> ComplexBox:
            acc = ComplexBox.point(_ZERO)
            for terms in term_lists:
                acc = acc + terms[i].eval_box(key)
            return acc

        base = [sum_terms(self.base_terms, i) for i in range(self.n)]
        pairs = [
            (
                [sum_terms(g, i) for i in range(self.n)],
                [sum_terms(hh, i) for i in range(self.n)],
            )
            for g, hh in self.pair_terms
        ]
        cached = (base, pairs)
        self._sum_cache[key] = cached
        return cached

    def f_box(self, mus: Sequence[ComplexBox], width: Fraction) -> Interval:
        """Certified enclosure of f over the given phase boxes."""
        if len(mus) != self.h:
            raise ValueError(f"expected {self.h} phases, got {len(mus)}")
        base, pairs = self._sums(width)
        diffs = []
        for i in range(self.n):
            acc = ComplexBox.point(self.y[i]) - base[i]
            for mu, (g, hh) in zip(mus, pairs):
                acc = acc - mu * g[i] - mu.conj() * hh[i]
            diffs.append(acc)
        return boxes_norm_interval(diffs, self.norm)


def _require_torus(d: LimitSetDescriptor) -> Torus:
    if not isinstance(d, Torus):
        raise ValueError("operation requires a nonempty (Torus) limit set")
    return d


def eval_f(
    d: LimitSetDescriptor,
    y: Sequence[Fraction],
    k: int,
    phases: Sequence[ComplexBox],
    precision: Fraction,
) -> Interval:
    """Enclosure of f_k at the given phases, width <= precision when the
    phases are exact points (wide phase boxes limit the achievable width)."""
    t = _require_torus(d)
    geom = FamilyGeometry(t, y, torus_family(t, k))
    width = precision
    best = geom.f_box(phases, width)
    for _ in range(64):
        if best.width <= precision:
            break
        width /= 8
        nxt = geom.f_box(phases, width)
        if nxt.width >= best.width:
            break
        best = nxt
    return best


def lipschitz_bound(d: LimitSetDescriptor, width: Fraction = Fraction(1, 64)) -> Fraction:
    """L with |f_k(mu) - f_k(nu)| <= L.max_j|mu_j - nu_j| for every k.

    Each free coordinate s contributes at most |v_s|.||column_s of Q||
    because its unit factors have modulus one uniformly in k.
    """
    t = _require_torus(d)
    form = t.form
    offsets = []
    off = 0
    for fd in form.factors:
        offsets.append(off)
        off += fd.fld.degree * fd.multiplicity
    rigid = {ci for ci, cls in enumerate(t.classes) if cls.rigid}
    total = _ZERO
    for sc in t.coords:
        if sc.class_index in rigid:
            continue
        fd = form.factors[sc.factor_index]
        local = sc.coord - offsets[sc.factor_index] - sc.root_index * fd.multiplicity
        col_boxes = [
            Embedded(fd.chain_columns[i][local], sc.root_index).eval_box(width)
            for i in range(form.n)
        ]
        col_norm = boxes_norm_interval(col_boxes, t.norm).hi
        v_abs = sc.value.eval_box(width).abs().hi
        total += v_abs * col_norm
    return total


def _minimize_family(
    geom: FamilyGeometry, tol: Fraction, cap: int
) -> Tuple[Fraction, Fraction]:
    """Certified (upper, lower) bracket of min f over the family, with
    upper - lower <= tol.  Raises ResourceLimitExceeded past cap evaluations."""
    if geom.h == 0:
        width = tol if tol > 0 else Fraction(1, 64)
        box = geom.f_box([], width)
        for _ in range(128):
            if box.width <= tol:
                break
            width /= 8
            box = geom.f_box([], width)
        return box.hi, box.lo

    full = Interval(Fraction(-1), Fraction(1))
    evals = 0
    best_u: Optional[Fraction] = None
    heap: List[Tuple[Fraction, int, Tuple[Arc, ...]]] = []
    counter = itertools.count()

    def push(region: Tuple[Arc, ...]) -> None:
        nonlocal evals, best_u
        evals += 1
        if evals > cap:
            raise ResourceLimitExceeded("net_cap", f"{evals} phase-region evaluations")
        widest = max(arc[1].width for arc in region)
        width = max(widest, tol) / 8
        mus = [_mu_box(arc) for arc in region]
        lo = geom.f_box(mus, width).lo
        pts = [_mu_point(sign, (tau.lo + tau.hi) / 2) for sign, tau in region]
        up = geom.f_box(pts, width).hi
        if best_u is None or up < best_u:
            best_u = up
        if best_u is None or lo <= best_u:
            heapq.heappush(heap, (lo, next(counter), region))

    for signs in itertools.product((1, -1), repeat=geom.h):
        push(tuple((s, full) for s in signs))

    while heap:
        lo, _, region = heapq.heappop(heap)
        if best_u is not None and lo > best_u:
            continue  # stale entry, already beaten
        if best_u is not None and best_u - lo <= tol:
            return best_u, lo
        # split the widest arc of the region
        j = max(range(geom.h), key=lambda i: region[i][1].width)
        sign, tau = region[j]
        mid = (tau.lo + tau.hi) / 2
        for part in (Interval(tau.lo, mid), Interval(mid, tau.hi)):
            push(region[:j] + ((sign, part),) + region[j + 1 :])
    # heap exhausted: every region was pruned above best_u
    assert best_u is not None
    return best_u, best_u - tol


def net_min(
    d: LimitSetDescriptor,
    y: Sequence[Fraction],
    k: int,
    net_spacing: Fraction,
    net_cap: int = DEFAULT_NET_CAP,
) -> Fraction:
    """Upper bound u with d_k <= u <= d_k + L.net_spacing (+ net_spacing
    evaluation slack when L = 0), via certified phase-space minimization."""
    t = _require_torus(d)
    if net_spacing <= 0:
        raise ValueError("net spacing must be positive")
    lip = lipschitz_bound(t)
    tol = lip * net_spacing if lip > 0 else net_spacing
    geom = FamilyGeometry(t, y, torus_family(t, k))
    upper, _ = _minimize_family(geom, tol, net_cap)
    return upper


class DistanceSeries:
    """Stateful series of certified bounds x_j with 0 < x_j - D < 2^-j.

    Levels must be requested in increasing order; a running minimum
    keeps the series non-increasing.
    """

    def __init__(
        self,
        d: LimitSetDescriptor,
        y: Sequence[Fraction],
        net_cap: int = DEFAULT_NET_CAP,
    ):
        self.d = _require_torus(d)
        self.y = [Fraction(v) for v in y]
        self.net_cap = net_cap
        self._geoms = [
            FamilyGeometry(self.d, self.y, torus_family(self.d, k))
            for k in range(self.d.period)
        ]
        self._best: Optional[Fraction] = None
        self._level = 0

    def at(self, j: int) -> DistanceBound:
        if j <= 0:
            raise ValueError("level must be >= 1")
        if j <= self._level:
            raise ValueError("levels must be requested in increasing order")
        tol = Fraction(1, 2 ** (j + 2))
        u = None
        for geom in self._geoms:
            uk, _ = _minimize_family(geom, tol, self.net_cap)
            if u is None or uk < u:
                u = uk
        x_j = u + Fraction(1, 2 ** (j + 2))
        if self._best is None or x_j < self._best:
            self._best = x_j
        self._level = j
        lower = max(self._best - 3 * Fraction(1, 2 ** (j + 2)), _ZERO)
        return DistanceBound(lower=lower, upper=self._best, level=j)


def distance_upper_series(
    d: LimitSetDescriptor,
    y: Sequence[Fraction],
    j: int,
    net_cap: int = DEFAULT_NET_CAP,
) -> DistanceBound:
    """DistanceBound at level j (running minimum over levels 1..j)."""
    series = DistanceSeries(d, y, net_cap)
    bound = None
    for level in range(1, j + 1):
        bound = series.at(level)
    return bound


def bound_gap(
    d: LimitSetDescriptor,
    y: Sequence[Fraction],
    delta: Fraction,
    j_max: int = 64,
    net_cap: int = DEFAULT_NET_CAP,
) -> GapResult:
    """Algorithm-1 style bisection of delta against D(y, S_L)."""
    t = _require_torus(d)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    series = DistanceSeries(t, y, net_cap)
    bound = None
    for j in range(1, j_max + 1):
        try:
            bound = series.at(j)
        except ResourceLimitExceeded:
            if bound is None:
                raise  # no level completed: nothing sound to report
            # refinement budget spent without separating delta from D:
            # report the tightest completed bracket
            return GapResult(GapOutcome.EXHAUSTED, eta=_ZERO, level=j - 1, bound=bound)
        x_j = bound.upper
        a_j = x_j - delta
        if a_j < 0:
            return GapResult(GapOutcome.RADIUS_EXCEEDS_D, eta=-a_j, level=j, bound=bound)
        b_j = x_j - delta - Fraction(1, 2**j)
        if b_j > 0:
            return GapResult(GapOutcome.RADIUS_BELOW_D, eta=b_j, level=j, bound=bound)
    return GapResult(GapOutcome.EXHAUSTED, eta=_ZERO, level=j_max, bound=bound)
