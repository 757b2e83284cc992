"""Exact spectral analysis: characteristic polynomial and Jordan form.

The decomposition A = P J P^{-1} is computed once per irreducible factor
f of the characteristic polynomial, inside the field K = Q[t]/(f) with
the eigenvalue represented by t.  The columns of P belonging to the
conjugate eigenvalues of f are the images of the same K-chains under the
embeddings t -> root_j, so nothing is ever computed in a splitting
field.  Entries of P and P^{-1} are `Embedded` values: a field element
together with the embedding that realizes it as a complex number.

Verification is exact: A.U = U.J and W.U = I are checked inside K
(hence hold under every embedding), and P.P^{-1} = I is checked over Q
entrywise using field traces (the sum over embeddings of a field element
is rational and computable from Newton power sums).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .arith.algebraic import AlgebraicNumber, factor_rational_poly
from .arith.intervals import ComplexBox, Interval
from .arith.polynomials import Polynomial
from .arith.rationals import sqrt_upper
from .arith.numberfield import (
    Matrix,
    NFElement,
    NumberField,
    kx_divmod,
    kx_eval_matrix,
    kx_mul,
    kx_xgcd,
    mat_identity,
    mat_inverse,
    mat_mul,
    mat_nullspace,
    mat_vec,
    _rref,
)

EUCLIDEAN = "euclidean"
MAX = "max"

_ZERO = Fraction(0)
_ONE = Fraction(1)

RationalMatrix = Sequence[Sequence[Fraction]]
RationalVector = Sequence[Fraction]


class Embedded:
    """A number-field element viewed through one embedding t -> root_j.

    Exact arithmetic happens on the field element; certified complex
    enclosures come from evaluating the element on the root's box.
    """

    __slots__ = ("elem", "root_index")

    def __init__(self, elem: NFElement, root_index: int):
        self.elem = elem
        self.root_index = root_index

    @property
    def is_zero(self) -> bool:
        return self.elem.is_zero

    def eval_box(self, width: Fraction) -> ComplexBox:
        return self.elem.eval_box(self.root_index, width)

    def to_algebraic(self) -> AlgebraicNumber:
        return self.elem.to_algebraic(self.root_index)

    def _check(self, other: "Embedded") -> None:
        if self.elem.field != other.elem.field or self.root_index != other.root_index:
            raise ValueError("embedded values live in different embeddings")

    def __add__(self, other: "Embedded") -> "Embedded":
        self._check(other)
        return Embedded(self.elem + other.elem, self.root_index)

    def __sub__(self, other: "Embedded") -> "Embedded":
        self._check(other)
        return Embedded(self.elem - other.elem, self.root_index)

    def __mul__(self, other: "Embedded") -> "Embedded":
        self._check(other)
        return Embedded(self.elem * other.elem, self.root_index)

    def __neg__(self) -> "Embedded":
        return Embedded(-self.elem, self.root_index)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Embedded)
            and self.elem == other.elem
            and self.root_index == other.root_index
        )

    def __repr__(self) -> str:
        return f"Embedded({self.elem.rep}, root {self.root_index})"


@dataclass(frozen=True)
class JordanBlock:
    """One Jordan block J_size(eigenvalue), located inside the global form."""

    eigenvalue: AlgebraicNumber
    size: int
    factor_index: int
    root_index: int
    start: int  # first coordinate of this block in the global ordering


@dataclass
class FactorData:
    """Per-irreducible-factor decomposition data, all over K = Q[t]/(f)."""

    factor: Polynomial
    multiplicity: int
    fld: NumberField
    chain_columns: Matrix  # n x e over K; columns grouped by chain
    dual_rows: Matrix  # e x n over K; dual_rows . chain_columns = I_e
    block_sizes: List[int]  # chain lengths, one per block, largest first


@dataclass
class JordanForm:
    """A = P J P^{-1} with exact algebraic entries.

    Global column ordering: factors in order, then embeddings (root
    indices) of each factor, then that factor's chains.  `blocks` lists
    every Jordan block with its eigenvalue and starting column.
    """

    n: int
    matrix: List[List[Fraction]]
    factors: List[FactorData]
    blocks: List[JordanBlock]
    _p: Optional[List[List[Embedded]]] = field(default=None, repr=False)
    _p_inv: Optional[List[List[Embedded]]] = field(default=None, repr=False)

    @property
    def P(self) -> List[List[Embedded]]:
        if self._p is None:
            cols: List[List[Embedded]] = []
            for f_idx, fd in enumerate(self.factors):
                for j in range(fd.fld.degree):
                    for c in range(fd.multiplicity):
                        cols.append(
                            [Embedded(fd.chain_columns[i][c], j) for i in range(self.n)]
                        )
            self._p = [[cols[j][i] for j in range(self.n)] for i in range(self.n)]
        return self._p

    @property
    def P_inv(self) -> List[List[Embedded]]:
        if self._p_inv is None:
            rows: List[List[Embedded]] = []
            for f_idx, fd in enumerate(self.factors):
                for j in range(fd.fld.degree):
                    for r in range(fd.multiplicity):
                        rows.append(
                            [Embedded(fd.dual_rows[r][i], j) for i in range(self.n)]
                        )
            self._p_inv = rows
        return self._p_inv

    def eigenvalue_of_column(self, col: int) -> AlgebraicNumber:
        for b in self.blocks:
            if b.start <= col < b.start + b.size:
                return b.eigenvalue
        raise IndexError(col)


def char_poly(a: RationalMatrix) -> Polynomial:
    """det(xI - A), monic of degree n, by the Faddeev-LeVerrier recursion."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    rows = [[Fraction(v) for v in row] for row in a]
    coeffs = [_ONE]  # leading coefficient of x^n
    m = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        am = [
            [sum((rows[i][l] * m[l][j] for l in range(n)), _ZERO) for j in range(n)]
            for i in range(n)
        ]
        c = -sum((am[i][i] for i in range(n)), _ZERO) / k
        coeffs.append(c)
        m = [
            [am[i][j] + (c if i == j else _ZERO) for j in range(n)] for i in range(n)
        ]
    return Polynomial.from_list(list(reversed(coeffs)))


def _reduce_against(
    basis: List[List[NFElement]], vec: List[NFElement]
) -> Optional[List[NFElement]]:
    """Reduce vec against an echelonized basis; None if it lies in the span.

    `basis` rows each have a leading (pivot) entry equal to one; rows are
    kept in pivot order of discovery.
    """
    v = list(vec)
    for row in basis:
        pivot = next(i for i, c in enumerate(row) if not c.is_zero)
        if not v[pivot].is_zero:
            factor = v[pivot]
            v = [x - factor * y for x, y in zip(v, row)]
    if all(c.is_zero for c in v):
        return None
    pivot = next(i for i, c in enumerate(v) if not c.is_zero)
    inv = v[pivot].inverse()
    return [c * inv for c in v]


def _factor_chains(
    a_rows: List[List[Fraction]], f: Polynomial, mult: int
) -> FactorData:
    """Jordan chains for the eigenvalue t of A inside K = Q[t]/(f)."""
    n = len(a_rows)
    fld = NumberField(f)
    m_mat = [[fld.element(v) for v in row] for row in a_rows]
    lam = fld.generator()
    b = [[m_mat[i][j] - (lam if i == j else fld.zero()) for j in range(n)] for i in range(n)]

    # powers of B and kernel dimensions until the kernel saturates at mult
    powers: List[Matrix] = [mat_identity(fld, n), b]
    kernels: List[List[List[NFElement]]] = [[], mat_nullspace(b, fld)]
    while len(kernels[-1]) < mult:
        powers.append(mat_mul(powers[-1], b))
        kernels.append(mat_nullspace(powers[-1], fld))
        if len(kernels) > n + 1:  # pragma: no cover - impossible by theory
            raise ArithmeticError("kernel failed to saturate")

    # top-down greedy chain extraction: accept w in ker(B^m) whenever its
    # eigenvector image B^{m-1} w extends the span of accepted eigenvectors
    eig_basis: List[List[NFElement]] = []
    chains: List[List[List[NFElement]]] = []
    for m in range(len(kernels) - 1, 0, -1):
        for w in kernels[m]:
            e_vec = mat_vec(powers[m - 1], w)
            reduced = _reduce_against(eig_basis, e_vec)
            if reduced is None:
                continue
            eig_basis.append(reduced)
            chains.append([mat_vec(powers[j], w) for j in range(m - 1, -1, -1)])

    block_sizes = [len(c) for c in chains]
    if sum(block_sizes) != mult:  # pragma: no cover - guarded by theory
        raise ArithmeticError("chain sizes do not sum to the multiplicity")

    # U: n x e, columns are the chain vectors in order
    cols: List[List[NFElement]] = [v for chain in chains for v in chain]
    u = [[cols[c][i] for c in range(mult)] for i in range(n)]

    # verify M.U = U.J_f(t) inside K
    j_mat = _jordan_matrix(fld, lam, block_sizes)
    mu = mat_mul(m_mat, u)
    uj = mat_mul(u, j_mat)
    if mu != uj:  # pragma: no cover - construction guarantees this
        raise ArithmeticError("A.P = P.J verification failed")

    w_rows = _dual_rows(a_rows, fld, u, f, mult)
    return FactorData(
        factor=f,
        multiplicity=mult,
        fld=fld,
        chain_columns=u,
        dual_rows=w_rows,
        block_sizes=block_sizes,
    )


def _jordan_matrix(fld: NumberField, lam: NFElement, sizes: Sequence[int]) -> Matrix:
    e = sum(sizes)
    j = [[fld.zero() for _ in range(e)] for _ in range(e)]
    pos = 0
    for s in sizes:
        for i in range(s):
            j[pos + i][pos + i] = lam
            if i + 1 < s:
                j[pos + i][pos + i + 1] = fld.one()
        pos += s
    return j


def _dual_rows(
    a_rows: List[List[Fraction]],
    fld: NumberField,
    u: Matrix,
    f: Polynomial,
    mult: int,
) -> Matrix:
    """Rows W (e x n over K) with W.U = I and W annihilating every other
    generalized eigenspace of A (including conjugate embeddings of f).

    W = S.T where T = q(A) is the spectral projector onto the chain space
    (q from CRT in K[x] against the characteristic polynomial) and S is a
    left inverse of U supported on pivot rows.
    """
    n = len(a_rows)
    charpoly = char_poly(a_rows)

    # (x - t)^mult and h = charpoly / (x - t)^mult in K[x]
    lam = fld.generator()
    lin = [-lam, fld.one()]
    pe: List[NFElement] = [fld.one()]
    for _ in range(mult):
        pe = kx_mul(pe, lin, fld)
    g = [fld.element(c) for c in charpoly.coeffs]
    h, rem = kx_divmod(g, pe, fld)
    if rem:  # pragma: no cover - (x - t)^mult divides charpoly over K
        raise ArithmeticError("projector division failed")
    # q = s*h with s*h = 1 mod (x - t)^mult  =>  q = 1 mod (x-t)^e, 0 mod h
    one, s, _ = kx_xgcd(h, pe, fld)
    if len(one) != 1:  # pragma: no cover - h and (x-t)^e are coprime
        raise ArithmeticError("projector gcd failed")
    q = kx_mul(s, h, fld)
    m_mat = [[fld.element(v) for v in row] for row in a_rows]
    t_mat = kx_eval_matrix(q, m_mat, fld)

    # S: left inverse of U via an invertible e x e row submatrix
    ut = [[u[i][c] for i in range(n)] for c in range(mult)]
    _, pivot_rows = _rref(ut)
    sub = [[u[r][c] for c in range(mult)] for r in pivot_rows]
    sub_inv = mat_inverse(sub, fld)
    s_mat = [[fld.zero() for _ in range(n)] for _ in range(mult)]
    for k, r in enumerate(pivot_rows):
        for i in range(mult):
            s_mat[i][r] = sub_inv[i][k]

    w = mat_mul(s_mat, t_mat)
    # verify W.U = I_e inside K
    wu = mat_mul(w, u)
    if wu != mat_identity(fld, mult):  # pragma: no cover
        raise ArithmeticError("dual row verification failed")
    return w


def jordan_decompose(a: RationalMatrix) -> JordanForm:
    """Exact Jordan decomposition A = P J P^{-1} over the algebraic numbers."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    rows = [[Fraction(v) for v in row] for row in a]
    p = char_poly(rows)
    factor_data = [_factor_chains(rows, f, m) for f, m in factor_rational_poly(p)]

    blocks: List[JordanBlock] = []
    col = 0
    for f_idx, fd in enumerate(factor_data):
        roots = fd.fld.roots()
        for j in range(fd.fld.degree):
            for size in fd.block_sizes:
                blocks.append(
                    JordanBlock(
                        eigenvalue=roots[j],
                        size=size,
                        factor_index=f_idx,
                        root_index=j,
                        start=col,
                    )
                )
                col += size
    if col != n:  # pragma: no cover - degrees times multiplicities sum to n
        raise ArithmeticError("block sizes do not sum to the dimension")

    form = JordanForm(n=n, matrix=rows, factors=factor_data, blocks=blocks)
    _verify_inverse(form)
    return form


def _verify_inverse(form: JordanForm) -> None:
    """Check P.P^{-1} = I entrywise over Q via field traces.

    (P.P^{-1})_{ab} sums (U_f.W_f)_{ab} over all embeddings of every
    factor; each inner sum is the field trace of a single K-element.
    """
    n = form.n
    total = [[_ZERO for _ in range(n)] for _ in range(n)]
    for fd in form.factors:
        prod = mat_mul(fd.chain_columns, fd.dual_rows)
        for i in range(n):
            for j in range(n):
                total[i][j] += prod[i][j].trace()
    for i in range(n):
        for j in range(n):
            expected = _ONE if i == j else _ZERO
            if total[i][j] != expected:  # pragma: no cover
                raise ArithmeticError("P.P_inv = I verification failed")


def transform_initial(form: JordanForm, x: RationalVector) -> List[Embedded]:
    """z = P^{-1} x, grouped in the global coordinate ordering."""
    if len(x) != form.n:
        raise ValueError("dimension mismatch")
    xs = [Fraction(v) for v in x]
    out: List[Embedded] = []
    for fd in form.factors:
        zf = [
            sum(
                (fd.dual_rows[r][i].scale(xs[i]) for i in range(form.n)),
                fd.fld.zero(),
            )
            for r in range(fd.multiplicity)
        ]
        for j in range(fd.fld.degree):
            out.extend(Embedded(z, j) for z in zf)
    return out


# -- certified norm bounds ----------------------------------------------


def boxes_norm_interval(boxes: Sequence[ComplexBox], norm: str) -> Interval:
    """Certified enclosure of the norm of a complex vector given by boxes."""
    if norm == EUCLIDEAN:
        acc = Interval.point(_ZERO)
        for b in boxes:
            acc = acc + b.abs_sq()
        return acc.sqrt()
    if norm == MAX:
        lo, hi = _ZERO, _ZERO
        for b in boxes:
            m = b.abs()
            lo = max(lo, m.lo)
            hi = max(hi, m.hi)
        return Interval(lo, hi)
    raise ValueError(f"unknown norm: {norm}")


def rational_vector_norm_interval(vec: Sequence[Fraction], norm: str) -> Interval:
    """Certified enclosure of the norm of an exact rational vector."""
    if norm == EUCLIDEAN:
        sq = sum((Fraction(v) ** 2 for v in vec), _ZERO)
        return Interval.point(sq).sqrt(64)
    if norm == MAX:
        m = max((abs(Fraction(v)) for v in vec), default=_ZERO)
        return Interval.point(m)
    raise ValueError(f"unknown norm: {norm}")


def embedded_matrix_norm_upper(
    rows: Sequence[Sequence[Embedded]], norm: str, width: Fraction = Fraction(1, 64)
) -> Fraction:
    """Rational upper bound on the operator norm of a matrix of Embedded.

    Euclidean vector norm: Frobenius bound.  Max vector norm: maximum
    absolute row sum.  Both dominate the respective operator norms.
    """
    if norm == EUCLIDEAN:
        total = _ZERO
        for row in rows:
            for entry in row:
                total += entry.eval_box(width).abs_sq().hi
        return sqrt_upper(total, 64)
    if norm == MAX:
        best = _ZERO
        for row in rows:
            s = sum((entry.eval_box(width).abs().hi for entry in row), _ZERO)
            best = max(best, s)
        return best
    raise ValueError(f"unknown norm: {norm}")
