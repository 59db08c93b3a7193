"""Polynomial and rational matrices over Z_{p^r}.

The central routine is :func:`chain_diagonalize`, a valuation-pivoted row
elimination over the Laurent ring Z_{p^r}((D)).  Every nonzero element of
that ring is p^a times a unit, so picking a pivot of minimal valuation lets
it clear its whole column without leaving the ring.  The result factors a
generator as ``U @ Delta @ V`` with ``Delta = [diag(p^a_i) | 0]``; the rows
of ``V`` carry the free components and the columns of ``V^{-1}`` carry the
dual.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import _fp
from .errors import ContextMismatch, DimensionMismatch, NotFullRowRank, SingularMatrix
from .poly import (
    Polynomial,
    RationalFunction,
    _mod_p,
    _padd,
    _pmul,
    _psub,
)
from .content import reduce_row
from .ring import RingContext


class _Matrix:
    entry_type: type = object

    __slots__ = ("entries", "ctx")

    def __init__(self, entries: Iterable[Iterable], ctx: RingContext):
        rows = tuple(tuple(self.entry_type.coerce(x, ctx) for x in row) for row in entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged matrix")
        self.entries = rows
        self.ctx = ctx

    @classmethod
    def _raw(cls, entries, ctx):
        obj = cls.__new__(cls)
        obj.entries = tuple(tuple(r) for r in entries)
        obj.ctx = ctx
        return obj

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def transpose(self):
        return type(self)._raw(zip(*self.entries), self.ctx) if self.entries else type(self)._raw((), self.ctx)

    @property
    def T(self):
        return self.transpose()

    def __eq__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)

    def __repr__(self):
        body = "; ".join("[" + ", ".join(repr(x) for x in r) + "]" for r in self.entries)
        return f"{type(self).__name__}([{body}])"


class PolyMatrix(_Matrix):
    """A k x n matrix of polynomials over Z_{p^r}."""

    entry_type = Polynomial
    __slots__ = ()

    @classmethod
    def from_coeffs(cls, rows: Sequence[Sequence[Sequence[int]]], ctx: RingContext) -> "PolyMatrix":
        """Build from rows of ascending coefficient lists (plain ints allowed)."""
        return cls([[Polynomial([x] if isinstance(x, int) else x, ctx) for x in row] for row in rows], ctx)

    @classmethod
    def from_constant(cls, rows: Sequence[Sequence[int]], ctx: RingContext) -> "PolyMatrix":
        return cls([[Polynomial((x,), ctx) for x in row] for row in rows], ctx)

    @classmethod
    def identity(cls, n: int, ctx: RingContext) -> "PolyMatrix":
        one, zero = Polynomial.one(ctx), Polynomial.zero(ctx)
        return cls._raw([[one if i == j else zero for j in range(n)] for i in range(n)], ctx)

    @classmethod
    def zeros(cls, k: int, n: int, ctx: RingContext) -> "PolyMatrix":
        zero = Polynomial.zero(ctx)
        return cls._raw([[zero] * n for _ in range(k)], ctx)

    def coeff_rows(self) -> list[list[tuple]]:
        return [[x.coeffs for x in r] for r in self.entries]

    def mod_p_rows(self) -> list[list[tuple]]:
        p = self.ctx.p
        return [[_mod_p(x.coeffs, p) for x in r] for r in self.entries]

    def max_degree(self) -> int:
        return max((x.degree for r in self.entries for x in r), default=-1)

    def is_constant(self) -> bool:
        return all(x.is_constant() for r in self.entries for x in r)

    def constant_rows(self) -> list[list[int]]:
        return [[x[0] for x in r] for r in self.entries]

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            return self.to_rational() @ other
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
        m = self.ctx.modulus
        cols = list(zip(*other.coeff_rows())) if other.entries else [() for _ in range(other.ncols)]
        out = []
        for r in self.coeff_rows():
            row = []
            for col in cols:
                acc = ()
                for a, b in zip(r, col):
                    if a and b:
                        acc = _padd(acc, _pmul(a, b, m), m)
                row.append(Polynomial._raw(acc, self.ctx))
            out.append(row)
        if not cols:
            out = [[] for _ in self.entries]
        return PolyMatrix._raw(out, self.ctx)

    def __mul__(self, c):
        if isinstance(c, (int, Polynomial)):
            return PolyMatrix._raw([[x * c for x in r] for r in self.entries], self.ctx)
        return NotImplemented

    __rmul__ = __mul__

    def vstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.entries and other.entries and self.ncols != other.ncols:
            raise DimensionMismatch("column counts differ")
        return PolyMatrix._raw(self.entries + other.entries, self.ctx)

    def select_rows(self, idx: Iterable[int]) -> "PolyMatrix":
        return PolyMatrix._raw([self.entries[i] for i in idx], self.ctx)

    def to_rational(self) -> "RationalMatrix":
        return RationalMatrix._raw(
            [[RationalFunction._raw(x.coeffs, (1,), self.ctx) for x in r] for r in self.entries], self.ctx
        )

    def to_lists(self) -> list[list[list[int]]]:
        return [[x.to_list() for x in r] for r in self.entries]


class RationalMatrix(_Matrix):
    """A matrix with entries in Z_{p^r}(D)."""

    entry_type = RationalFunction
    __slots__ = ()

    @classmethod
    def identity(cls, n: int, ctx: RingContext) -> "RationalMatrix":
        return PolyMatrix.identity(n, ctx).to_rational()

    def is_polynomial(self) -> bool:
        return all(x.is_polynomial() for r in self.entries for x in r)

    def to_poly(self) -> PolyMatrix:
        if not self.is_polynomial():
            raise ValueError("matrix has non-polynomial entries")
        return PolyMatrix._raw([[x.num for x in r] for r in self.entries], self.ctx)

    def __matmul__(self, other):
        if isinstance(other, PolyMatrix):
            other = other.to_rational()
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        zero = RationalFunction._raw((), (1,), self.ctx)
        cols = list(zip(*other.entries)) if other.entries else [() for _ in range(other.ncols)]
        out = []
        for r in self.entries:
            row = []
            for col in cols:
                acc = zero
                for a, b in zip(r, col):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RationalMatrix._raw(out, self.ctx)

    def __rmatmul__(self, other):
        if isinstance(other, PolyMatrix):
            return other.to_rational() @ self
        return NotImplemented

    def vstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if isinstance(other, PolyMatrix):
            other = other.to_rational()
        return RationalMatrix._raw(self.entries + other.entries, self.ctx)


def as_rational(M) -> RationalMatrix:
    return M.to_rational() if isinstance(M, PolyMatrix) else M


# -- rank, completion, inversion --------------------------------------------

def full_row_rank(M) -> bool:
    """Rows independent over Z_{p^r}((D)), decided on the mod-p projection."""
    if isinstance(M, RationalMatrix):
        M = clear_denominators(M)
    if M.nrows == 0:
        return True
    return _fp.rank(M.mod_p_rows(), M.ctx.p) == M.nrows


def complete_to_invertible(G: PolyMatrix) -> PolyMatrix:
    """Standard-basis rows L making ``G`` stacked over ``L`` invertible."""
    k, n = G.shape
    pivots, _ = _fp.echelon_pivots(G.mod_p_rows(), G.ctx.p) if k else ([], [])
    if len(pivots) < k:
        raise NotFullRowRank(f"rank {len(pivots)} < {k} rows")
    one, zero = Polynomial.one(G.ctx), Polynomial.zero(G.ctx)
    rest = [j for j in range(n) if j not in set(pivots)]
    return PolyMatrix._raw([[one if c == j else zero for c in range(n)] for j in rest], G.ctx)


def _invert_poly(rows: list[list[tuple]], ctx: RingContext) -> tuple[list[list[tuple]], list[tuple]]:
    """Fraction-free Gauss-Jordan: returns (T, d) with T @ M = diag(d)."""
    n = len(rows)
    p, m = ctx.p, ctx.modulus
    work = [list(r) for r in rows]
    T = [[(1,) if i == j else () for j in range(n)] for i in range(n)]
    for c in range(n):
        sel = None
        for i in range(c, n):
            x = work[i][c]
            if x and any(v % p for v in x):
                if sel is None or len(x) < len(work[sel][c]):
                    sel = i
        if sel is None:
            raise SingularMatrix("determinant vanishes mod p")
        work[c], work[sel] = work[sel], work[c]
        T[c], T[sel] = T[sel], T[c]
        w = work[c][c]
        for i in range(n):
            if i == c:
                continue
            e = work[i][c]
            if not e:
                continue
            work[i] = [_psub(_pmul(w, x, m), _pmul(e, y, m), m) for x, y in zip(work[i], work[c])]
            T[i] = [_psub(_pmul(w, x, m), _pmul(e, y, m), m) for x, y in zip(T[i], T[c])]
            _, both = reduce_row(work[i] + T[i], ctx)
            work[i], T[i] = both[:n], both[n:]
    return T, [work[i][i] for i in range(n)]


def invert_matrix(M) -> RationalMatrix:
    """Exact inverse over Z_{p^r}(D); raises SingularMatrix when det = 0 mod p."""
    n, n2 = M.shape
    if n != n2:
        raise DimensionMismatch("matrix must be square")
    ctx = M.ctx
    if isinstance(M, RationalMatrix):
        # M = Q^{-1} P with Q diagonal of row denominators, so M^{-1} = P^{-1} Q
        scales, P = _row_common_denominators(M)
        inv = invert_matrix(P)
        return RationalMatrix._raw(
            [[inv.entries[i][j] * RationalFunction._raw(scales[j], (1,), ctx) for j in range(n)] for i in range(n)],
            ctx,
        )
    T, d = _invert_poly(M.coeff_rows(), ctx)
    return RationalMatrix._raw([[RationalFunction._make(T[i][j], d[i], ctx) for j in range(n)] for i in range(n)], ctx)


def _row_common_denominators(N: RationalMatrix) -> tuple[list[tuple], PolyMatrix]:
    ctx = N.ctx
    scales, rows = [], []
    for r in N.entries:
        acc = RationalFunction._raw((1,), (1,), ctx)
        for x in r:
            if not x.is_polynomial() and not (x * acc).is_polynomial():
                acc = acc * RationalFunction._raw(x.den.coeffs, (1,), ctx)
        row = [x * acc for x in r]
        scales.append(acc.num.coeffs)
        rows.append([y.num for y in row])
    return scales, PolyMatrix._raw(rows, ctx)


def clear_denominators(N) -> PolyMatrix:
    """Polynomial matrix with the same row module over Z_{p^r}((D)).

    Each row is multiplied by a common denominator of its entries; those are
    Laurent units, so the image is unchanged.  Polynomial input is returned
    as is.
    """
    if isinstance(N, PolyMatrix):
        return N
    return _row_common_denominators(N)[1]


def reduce_rows(M: PolyMatrix) -> PolyMatrix:
    """Divide each row by the Laurent-unit common factors that can be found
    (powers of D and lifted mod-p gcds).  The row module is unchanged."""
    ctx = M.ctx
    rows = [reduce_row([x.coeffs for x in r], ctx)[1] for r in M.entries]
    return PolyMatrix._raw([[Polynomial._raw(x, ctx) for x in r] for r in rows], ctx)


# -- chain diagonalization --------------------------------------------------

@dataclass(frozen=True, eq=False)
class ChainDiagonalization:
    """``M == U @ [diag(p^a_1, ..., p^a_s) | 0] @ V`` with U, V invertible.

    ``exponents`` are non-decreasing; ``pivot_cols[i]`` is the column where
    row ``i`` of ``V`` has a unit entry.  ``U`` and ``V_inv`` are computed on
    first access.
    """

    source: PolyMatrix | RationalMatrix
    exponents: tuple[int, ...]
    V: PolyMatrix
    pivot_cols: tuple[int, ...]
    _ops: tuple = field(repr=False)

    @property
    def ctx(self) -> RingContext:
        return self.source.ctx

    @property
    def s(self) -> int:
        return len(self.exponents)

    @cached_property
    def V_inv(self) -> RationalMatrix:
        return invert_matrix(self.V)

    @cached_property
    def delta(self) -> PolyMatrix:
        k, n = self.source.shape
        ctx = self.ctx
        zero = Polynomial.zero(ctx)
        rows = [[zero] * n for _ in range(k)]
        for i, a in enumerate(self.exponents):
            rows[i][i] = Polynomial((ctx.p**a,), ctx)
        return PolyMatrix._raw(rows, ctx)

    @cached_property
    def U(self) -> RationalMatrix:
        ctx = self.ctx
        k = self.source.nrows
        cols = [[RationalFunction._raw((1,) if i == j else (), (1,), ctx) for i in range(k)] for j in range(k)]
        for op in self._ops:
            kind = op[0]
            if kind == "swap":
                _, i, j = op
                cols[i], cols[j] = cols[j], cols[i]
            elif kind == "elim":
                _, t, i, w, c = op
                inv_w = RationalFunction._make((1,), w, ctx)
                cw = RationalFunction._make(c, w, ctx)
                cols[i] = [x + y * cw for x, y in zip(cols[i], cols[t])]
                cols[t] = [y * inv_w for y in cols[t]]
            elif kind == "div":
                _, t, q = op
                f = RationalFunction._raw(q, (1,), ctx)
                cols[t] = [y * f for y in cols[t]]
            elif kind == "scale":
                _, t, q = op
                f = RationalFunction._make((1,), q, ctx)
                cols[t] = [y * f for y in cols[t]]
        return RationalMatrix._raw([list(r) for r in zip(*cols)] if k else [], ctx)

    def reconstruct(self) -> RationalMatrix:
        return self.U @ self.delta.to_rational() @ self.V.to_rational()

    def check(self) -> bool:
        """Exact verification of the factorization and invertibility claims."""
        n = self.V.nrows
        return (
            self.reconstruct() == as_rational(self.source)
            and (self.V.to_rational() @ self.V_inv) == RationalMatrix.identity(n, self.ctx)
            and full_row_rank(self.V)
            and (self.source.nrows == 0 or full_row_rank(clear_denominators(self.U)))
        )


def chain_diagonalize(M) -> ChainDiagonalization:
    """Valuation-pivoted elimination over Z_{p^r}((D)).

    At each step the remaining entry of least p-valuation a (ties broken by
    degree, then row, then column) is written p^a * w with w a Laurent unit;
    every lower row is replaced by ``w * row - (e / p^a) * pivot_row``.  Rows
    are divided by any common Laurent-unit factor that can be found, which
    keeps degrees from compounding.  The pivot row divided by p^a becomes the
    next row of V; non-pivot columns are completed with unit vectors.
    """
    ctx = M.ctx
    p, m = ctx.p, ctx.modulus
    ops: list = []
    if isinstance(M, RationalMatrix):
        scales, P = _row_common_denominators(M)
        for i, q in enumerate(scales):
            if q != (1,):
                ops.append(("scale", i, q))
        source = M
        work = P.coeff_rows()
    else:
        source = M
        work = M.coeff_rows()
    k, n = len(work), (len(work[0]) if work else M.ncols)

    for i in range(k):
        f, work[i] = reduce_row(work[i], ctx)
        if f != (1,):
            ops.append(("div", i, f))

    pivot_cols: list[int] = []
    exponents: list[int] = []
    vrows: list[list[tuple]] = []
    free_cols = list(range(n))
    top = 0
    while top < k:
        best = None
        for i in range(top, k):
            row = work[i]
            for j in free_cols:
                x = row[j]
                if not x:
                    continue
                key = (min(ctx.valuation(c) for c in x), len(x), i, j)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        a, _, i, j = best
        if i != top:
            work[top], work[i] = work[i], work[top]
            ops.append(("swap", top, i))
        q = p**a
        prow = work[top]
        w = tuple(c // q for c in prow[j])
        for t in range(top + 1, k):
            e = work[t][j]
            if not e:
                continue
            c = tuple(x // q for x in e)
            work[t] = [_psub(_pmul(w, x, m), _pmul(c, y, m), m) for x, y in zip(work[t], prow)]
            ops.append(("elim", t, top, w, c))
            f, work[t] = reduce_row(work[t], ctx)
            if f != (1,):
                ops.append(("div", t, f))
        vrows.append([tuple(x // q for x in c) for c in prow])
        exponents.append(a)
        pivot_cols.append(j)
        free_cols.remove(j)
        top += 1

    for j in free_cols:
        vrows.append([(1,) if c == j else () for c in range(n)])
    if exponents != sorted(exponents):
        raise AssertionError("exponents must be non-decreasing")
    V = PolyMatrix._raw([[Polynomial._raw(x, ctx) for x in row] for row in vrows], ctx)
    return ChainDiagonalization(source, tuple(exponents), V, tuple(pivot_cols), tuple(ops))
