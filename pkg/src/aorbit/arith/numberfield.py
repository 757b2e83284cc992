"""Arithmetic in Q[t]/(f) for irreducible f, and exact linear algebra.

The spectral layer computes Jordan chains once per irreducible factor of
the characteristic polynomial, with the eigenvalue represented as the
residue class t.  Conjugate eigenvalues reuse the same data through the
embeddings t -> root_j, so no field compositum is ever formed.  Field
traces (sums over all embeddings) are rational and computable from the
coefficients of f alone via Newton's identities.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebraic import AlgebraicNumber, algebraic_from_field_rep
from .intervals import ComplexBox
from .polynomials import Polynomial, poly_xgcd

_ZERO = Fraction(0)


class NumberField:
    """The field Q[t]/(f), f monic irreducible over Q."""

    def __init__(self, modulus: Polynomial):
        modulus = modulus.monic()
        if modulus.degree < 1:
            raise ValueError("modulus must have degree >= 1")
        self.modulus = modulus
        self.degree = modulus.degree
        self._roots: Optional[List[AlgebraicNumber]] = None
        self._power_traces = self._compute_power_traces()

    def _compute_power_traces(self) -> List[Fraction]:
        """Power sums p_k = sum of roots^k for k < degree (Newton)."""
        d = self.degree
        # f = x^d + a_{d-1} x^{d-1} + ... + a_0; e_k = (-1)^k a_{d-k}
        e = [Fraction(0)] * (d + 1)
        e[0] = Fraction(1)
        for k in range(1, d + 1):
            e[k] = (-1) ** k * self.modulus.coeffs[d - k]
        p = [Fraction(d)]
        for k in range(1, d):
            acc = Fraction(0)
            for i in range(1, k):
                acc += (-1) ** (i - 1) * e[i] * p[k - i]
            acc += (-1) ** (k - 1) * Fraction(k) * e[k]
            p.append(acc)
        return p

    def roots(self) -> List[AlgebraicNumber]:
        """All embeddings of t, as isolated algebraic numbers."""
        if self._roots is None:
            self._roots = [
                AlgebraicNumber(self.modulus, i) for i in range(self.degree)
            ]
        return self._roots

    def element(self, rep) -> "NFElement":
        if isinstance(rep, Polynomial):
            return NFElement(self, rep % self.modulus)
        return NFElement(self, Polynomial.of(Fraction(rep)))

    def zero(self) -> "NFElement":
        return NFElement(self, Polynomial.zero())

    def one(self) -> "NFElement":
        return NFElement(self, Polynomial.one())

    def generator(self) -> "NFElement":
        return self.element(Polynomial.x())

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash(self.modulus.coeffs)

    def __repr__(self) -> str:
        return f"NumberField({self.modulus})"


class NFElement:
    """An element of a NumberField, as a polynomial in t of degree < d."""

    __slots__ = ("field", "rep")

    def __init__(self, field: NumberField, rep: Polynomial):
        self.field = field
        self.rep = rep

    @property
    def is_zero(self) -> bool:
        return self.rep.is_zero

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NFElement)
            and self.field == other.field
            and self.rep == other.rep
        )

    def __hash__(self) -> int:
        return hash((self.field, self.rep.coeffs))

    def __add__(self, other: "NFElement") -> "NFElement":
        return NFElement(self.field, self.rep + other.rep)

    def __sub__(self, other: "NFElement") -> "NFElement":
        return NFElement(self.field, self.rep - other.rep)

    def __neg__(self) -> "NFElement":
        return NFElement(self.field, -self.rep)

    def __mul__(self, other: "NFElement") -> "NFElement":
        return NFElement(self.field, (self.rep * other.rep) % self.field.modulus)

    def scale(self, q: Fraction) -> "NFElement":
        return NFElement(self.field, self.rep.scale(q))

    def inverse(self) -> "NFElement":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        g, s, _ = poly_xgcd(self.rep, self.field.modulus)
        if g.degree != 0:
            raise ArithmeticError("modulus not irreducible")  # pragma: no cover
        return NFElement(self.field, (s.scale(1 / g.coeffs[0])) % self.field.modulus)

    def __truediv__(self, other: "NFElement") -> "NFElement":
        return self * other.inverse()

    def trace(self) -> Fraction:
        """Field trace: sum of this element over all embeddings (rational)."""
        return sum(
            (c * self.field._power_traces[j] for j, c in enumerate(self.rep.coeffs)),
            _ZERO,
        )

    def eval_box(self, root_index: int, width: Fraction) -> ComplexBox:
        """Certified enclosure of the image under embedding t -> root_j."""
        root = self.field.roots()[root_index]
        if self.rep.degree <= 0:
            return ComplexBox.point(self.rep.eval(_ZERO))
        w = width
        while True:
            box = self.rep.eval_box(root.refine(w))
            if box.width <= width:
                return box
            w /= 8

    def to_algebraic(self, root_index: int) -> AlgebraicNumber:
        root = self.field.roots()[root_index]
        if self.rep.degree <= 0:
            return AlgebraicNumber.from_rational(self.rep.eval(_ZERO))
        return algebraic_from_field_rep(self.field.modulus, self.rep, root)

    def __repr__(self) -> str:
        return f"NFElement({self.rep})"


Matrix = List[List[NFElement]]


def mat_identity(field: NumberField, n: int) -> Matrix:
    return [
        [field.one() if i == j else field.zero() for j in range(n)] for i in range(n)
    ]


def mat_from_rational(field: NumberField, rows: Sequence[Sequence[Fraction]]) -> Matrix:
    return [[field.element(Fraction(v)) for v in row] for row in rows]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = a[i][0] * b[0][j]
            for k in range(1, m):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a: Matrix, v: Sequence[NFElement]) -> List[NFElement]:
    out = []
    for row in a:
        acc = row[0] * v[0]
        for k in range(1, len(v)):
            acc = acc + row[k] * v[k]
        out.append(acc)
    return out


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _rref(mat: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form (in place on a copy) with pivot columns."""
    m = [row[:] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if not m[i][c].is_zero:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def mat_rank(mat: Matrix) -> int:
    if not mat:
        return 0
    _, pivots = _rref(mat)
    return len(pivots)


def mat_nullspace(mat: Matrix, field: NumberField) -> List[List[NFElement]]:
    """Basis of the right kernel."""
    if not mat:
        return []
    cols = len(mat[0])
    rref, pivots = _rref(mat)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [field.zero()] * cols
        vec[fc] = field.one()
        for r, pc in enumerate(pivots):
            vec[pc] = -rref[r][fc]
        basis.append(vec)
    return basis


def mat_inverse(mat: Matrix, field: NumberField) -> Matrix:
    n = len(mat)
    aug = [row[:] + ident_row for row, ident_row in zip(mat, mat_identity(field, n))]
    rref, pivots = _rref(aug)
    if pivots != list(range(n)):
        raise ArithmeticError("matrix is singular")
    return [row[n:] for row in rref]


def mat_solve(mat: Matrix, rhs: Sequence[NFElement], field: NumberField) -> List[NFElement]:
    """Solve mat * x = rhs for square nonsingular mat."""
    inv = mat_inverse(mat, field)
    return mat_vec(inv, list(rhs))


# -- univariate polynomials over a number field (coefficient lists, ----
# -- lowest degree first, trailing zeros trimmed) ----------------------

KPoly = List[NFElement]


def kx_trim(p: KPoly) -> KPoly:
    n = len(p)
    while n > 0 and p[n - 1].is_zero:
        n -= 1
    return p[:n]


def kx_mul(a: KPoly, b: KPoly, field: NumberField) -> KPoly:
    if not a or not b:
        return []
    out = [field.zero() for _ in range(len(a) + len(b) - 1)]
    for i, ca in enumerate(a):
        if ca.is_zero:
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return kx_trim(out)


def kx_divmod(a: KPoly, b: KPoly, field: NumberField) -> Tuple[KPoly, KPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    dq = len(a) - len(b)
    if dq < 0:
        return [], list(a)
    quot = [field.zero() for _ in range(dq + 1)]
    inv_lead = b[-1].inverse()
    for i in range(dq, -1, -1):
        c = rem[i + len(b) - 1] * inv_lead
        quot[i] = c
        if not c.is_zero:
            for j, cb in enumerate(b):
                rem[i + j] = rem[i + j] - c * cb
    return kx_trim(quot), kx_trim(rem)


def kx_xgcd(a: KPoly, b: KPoly, field: NumberField) -> Tuple[KPoly, KPoly, KPoly]:
    """Extended gcd in K[x]: (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = kx_trim(list(a)), kx_trim(list(b))
    s0, s1 = [field.one()], []
    t0, t1 = [], [field.one()]

    def sub(u: KPoly, v: KPoly) -> KPoly:
        out = list(u) + [field.zero()] * max(0, len(v) - len(u))
        for i, c in enumerate(v):
            out[i] = out[i] - c
        return kx_trim(out)

    while r1:
        q, r = kx_divmod(r0, r1, field)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, kx_mul(q, s1, field))
        t0, t1 = t1, sub(t0, kx_mul(q, t1, field))
    if not r0:
        return r0, s0, t0
    inv_lead = r0[-1].inverse()
    scale = lambda p: [c * inv_lead for c in p]
    return scale(r0), scale(s0), scale(t0)


def kx_eval_matrix(p: KPoly, M: Matrix, field: NumberField) -> Matrix:
    """p(M) by Horner over K."""
    n = len(M)
    acc = [[field.zero() for _ in range(n)] for _ in range(n)]
    for c in reversed(p):
        acc = mat_mul(acc, M)
        for i in range(n):
            acc[i][i] = acc[i][i] + c
    return acc
