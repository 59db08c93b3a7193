"""Convolutional codes over Z_{p^r}: decomposition, p-encoders, membership."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ContextMismatch, DimensionMismatch, NotConstant
from .matrix import (
    ChainDiagonalization,
    PolyMatrix,
    RationalMatrix,
    chain_diagonalize,
    clear_denominators,
    full_row_rank,
)
from .content import reduce_row
from .poly import Polynomial, RationalFunction, _pmul, _psub
from .pstructure import p_dimension_formula
from .ring import RingContext


class ConvolutionalCode:
    """The Z_{p^r}((D))-row module of a generator matrix.

    A rational generator is replaced by a polynomial one with the same
    image.  The chain diagonalization is computed at construction; codes
    are immutable and compared by image (:func:`code_equal`), not by
    generator.
    """

    __slots__ = ("ctx", "n", "generator", "diag", "k_list")

    def __init__(self, generator, n: int | None = None):
        if isinstance(generator, RationalMatrix):
            generator = clear_denominators(generator)
        if not isinstance(generator, PolyMatrix):
            raise TypeError("generator must be a PolyMatrix or RationalMatrix")
        ctx = generator.ctx
        if generator.nrows == 0:
            if n is None:
                raise DimensionMismatch("an empty generator needs an explicit length n")
            generator = PolyMatrix.zeros(1, n, ctx)
        if n is not None and generator.ncols != n:
            raise DimensionMismatch(f"generator has {generator.ncols} columns, expected {n}")
        self.ctx = ctx
        self.n = generator.ncols
        self.generator = generator
        self.diag: ChainDiagonalization = chain_diagonalize(generator)
        ks = [0] * ctx.r
        for a in self.diag.exponents:
            ks[a] += 1
        self.k_list = tuple(ks)

    @classmethod
    def from_coeffs(cls, rows, ctx: RingContext, n: int | None = None) -> "ConvolutionalCode":
        return cls(PolyMatrix.from_coeffs(rows, ctx), n)

    @classmethod
    def zero(cls, ctx: RingContext, n: int) -> "ConvolutionalCode":
        return cls(PolyMatrix.zeros(1, n, ctx))

    @classmethod
    def full(cls, ctx: RingContext, n: int, scale: int = 1) -> "ConvolutionalCode":
        """scale * Z_{p^r}^n((D)); the zero code when scale vanishes."""
        return cls(PolyMatrix.identity(n, ctx) * scale)

    def scaled(self, c: int) -> "ConvolutionalCode":
        return ConvolutionalCode(self.generator * c, self.n)

    @property
    def p_dim(self) -> int:
        return p_dimension_formula(self.k_list)

    @property
    def rank(self) -> int:
        """Number of diagonal entries, i.e. sum of the k_i."""
        return len(self.diag.exponents)

    def is_block(self) -> bool:
        return self.generator.is_constant()

    def __contains__(self, w) -> bool:
        return contains(self, w)

    def __repr__(self):
        return f"ConvolutionalCode(p={self.ctx.p}, r={self.ctx.r}, n={self.n}, k={self.k_list})"


@dataclass(frozen=True)
class Decomposition:
    """C = Im G_0 + p Im G_1 + ... + p^(r-1) Im G_{r-1}, a direct sum."""

    components: dict  # exponent i -> PolyMatrix G_i with k_i rows
    k_list: tuple[int, ...]
    n: int

    def stacked(self) -> PolyMatrix:
        mats = [self.components[i] for i in sorted(self.components)]
        out = mats[0]
        for M in mats[1:]:
            out = out.vstack(M)
        return out

    def component_codes(self) -> dict:
        return {i: ConvolutionalCode(G) for i, G in self.components.items()}


@dataclass(frozen=True)
class PEncoder:
    rows: tuple  # tuple of PVectors forming a p-basis
    p_dim: int

    def matrix(self, ctx: RingContext, n: int) -> PolyMatrix:
        if not self.rows:
            return PolyMatrix.zeros(0, n, ctx)
        return PolyMatrix._raw(self.rows, ctx)


@dataclass(frozen=True)
class StandardFormResult:
    matrix: tuple  # rows of ints over Z_{p^r}, columns permuted
    params: tuple[int, ...]
    column_permutation: tuple[int, ...]  # new column j holds old column column_permutation[j]


def decompose(C: ConvolutionalCode) -> Decomposition:
    d = C.diag
    comps: dict[int, list] = {}
    for row, a in zip(d.V.entries, d.exponents):
        comps.setdefault(a, []).append(row)
    components = {a: clear_denominators(PolyMatrix._raw(rows, C.ctx)) for a, rows in comps.items()}
    return Decomposition(components, C.k_list, C.n)


def p_encoder(C: ConvolutionalCode) -> PEncoder:
    """Blocks (p^i g, p^(i+1) g, ..., p^(r-1) g) for every row g of every G_i."""
    ctx = C.ctx
    rows = []
    for i, G in sorted(decompose(C).components.items()):
        for g in G.entries:
            for j in range(i, ctx.r):
                rows.append(tuple(x * ctx.p**j for x in g))
    return PEncoder(tuple(rows), len(rows))


def p_dim(C: ConvolutionalCode) -> int:
    return C.p_dim


def is_free(C: ConvolutionalCode) -> bool:
    return not any(C.k_list[1:])


def _as_rational_vector(w, ctx: RingContext) -> list[RationalFunction]:
    out = []
    for x in w:
        if isinstance(x, (list, tuple)):
            x = Polynomial(x, ctx)
        out.append(RationalFunction.coerce(x, ctx))
    return out


def contains(C: ConvolutionalCode, w: Sequence) -> bool:
    """Exact membership of a (rational) vector in the code.

    The vector is cleared of denominators and reduced against the echelon
    rows p^a_i t_i of the diagonalization: at pivot column j_i the entry e
    must have valuation >= a_i, and ``w_i * w - e * t_i`` removes it, where
    w_i = t_i[j_i] is a unit.  The vector is a codeword iff nothing is left.
    """
    if len(w) != C.n:
        raise DimensionMismatch(f"vector of length {len(w)} for a code of length {C.n}")
    ctx = C.ctx
    m = ctx.modulus
    w = _as_rational_vector(w, ctx)
    row = reduce_row(clear_denominators(RationalMatrix._raw([w], ctx)).coeff_rows()[0], ctx)[1]
    d = C.diag
    for i, (a, j) in enumerate(zip(d.exponents, d.pivot_cols)):
        e = row[j]
        if not e:
            continue
        if min(ctx.valuation(c) for c in e) < a:
            return False
        t = d.V.entries[i]
        u = t[j].coeffs
        row = [_psub(_pmul(u, x, m), _pmul(e, y.coeffs, m), m) for x, y in zip(row, t)]
        row = reduce_row(row, ctx)[1]
    return not any(row)


def contains_via_inverse(C: ConvolutionalCode, w: Sequence) -> bool:
    """Membership read off w V^{-1}: coordinate i needs valuation >= a_i
    and coordinates past the diagonal must vanish.  Slower than
    :func:`contains`; kept as an independent route for cross-checks."""
    if len(w) != C.n:
        raise DimensionMismatch(f"vector of length {len(w)} for a code of length {C.n}")
    ctx = C.ctx
    w = _as_rational_vector(w, ctx)
    if all(x.is_zero() for x in w):
        return True
    Vinv = C.diag.V_inv
    exps = C.diag.exponents
    for i in range(C.n):
        z = RationalFunction._raw((), (1,), ctx)
        for j in range(C.n):
            if w[j] and Vinv.entries[j][i]:
                z = z + w[j] * Vinv.entries[j][i]
        need = exps[i] if i < len(exps) else ctx.r
        if z.valuation() < need:
            return False
    return True


def code_equal(C1: ConvolutionalCode, C2: ConvolutionalCode) -> bool:
    if C1.ctx != C2.ctx:
        raise ContextMismatch(f"{C1.ctx} vs {C2.ctx}")
    if C1.n != C2.n:
        raise DimensionMismatch(f"lengths {C1.n} and {C2.n}")
    if C1.k_list != C2.k_list:
        return False
    return all(contains(C2, g) for g in C1.generator) and all(contains(C1, g) for g in C2.generator)


def code_sum(C1: ConvolutionalCode, C2: ConvolutionalCode) -> ConvolutionalCode:
    if C1.ctx != C2.ctx:
        raise ContextMismatch(f"{C1.ctx} vs {C2.ctx}")
    if C1.n != C2.n:
        raise DimensionMismatch(f"lengths {C1.n} and {C2.n}")
    return ConvolutionalCode(C1.generator.vstack(C2.generator))


def sum_and_intersection(C1: ConvolutionalCode, C2: ConvolutionalCode):
    """(C1 + C2, C1 & C2); the intersection is (C1^perp + C2^perp)^perp."""
    from .dual import dual

    total = code_sum(C1, C2)
    meet = dual(code_sum(dual(C1).dual_code, dual(C2).dual_code)).dual_code
    return total, meet


def standard_form(G, ctx: RingContext | None = None) -> StandardFormResult:
    """Row reduce a constant generator to the block-triangular standard form.

    Rows of the result come in blocks p^i [0 ... 0 I_{k_i} * ... *], with
    pivots of valuation i; zero rows are dropped.
    """
    if isinstance(G, PolyMatrix):
        if not G.is_constant():
            raise NotConstant("standard form needs a constant (block code) generator")
        ctx = G.ctx
        rows = [[x[0] for x in r] for r in G.entries]
    else:
        if ctx is None:
            raise TypeError("ctx required for integer input")
        rows = [[int(x) % ctx.modulus for x in r] for r in G]
    p, r, m = ctx.p, ctx.r, ctx.modulus
    k = len(rows)
    n = len(rows[0]) if rows else 0
    perm = list(range(n))
    params = [0] * r
    top = 0
    block_start = 0
    current = -1
    while top < k:
        best = None
        for i in range(top, k):
            for j in range(top, n):
                if rows[i][j]:
                    v = ctx.valuation(rows[i][j])
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        a, i, j = best
        if a != current:
            current, block_start = a, top
        rows[top], rows[i] = rows[i], rows[top]
        if j != top:
            for row in rows:
                row[top], row[j] = row[j], row[top]
            perm[top], perm[j] = perm[j], perm[top]
        q = p**a
        inv = pow(rows[top][top] // q, -1, m)
        rows[top] = [x * inv % m for x in rows[top]]
        for t in range(top + 1, k):
            e = rows[t][top]
            if e:
                c = e // q
                rows[t] = [(x - c * y) % m for x, y in zip(rows[t], rows[top])]
        # identity block: clear above the pivot within its own valuation block
        for t in range(block_start, top):
            e = rows[t][top]
            if e:
                c = e // q
                rows[t] = [(x - c * y) % m for x, y in zip(rows[t], rows[top])]
        params[a] += 1
        top += 1
    out = tuple(tuple(row) for row in rows[:top])
    return StandardFormResult(out, tuple(params), tuple(perm))


def is_standard_form(res: StandardFormResult, ctx: RingContext) -> bool:
    """Shape check: block row i is p^i [0 I_{k_i} *] in the permuted columns."""
    p = ctx.p
    row = 0
    col = 0
    for i, ki in enumerate(res.params):
        q = p**i
        for t in range(ki):
            R = res.matrix[row + t]
            if any(x % q for x in R):
                return False
            if any(R[c] for c in range(col)):
                return False
            for c in range(col, col + ki):
                if R[c] != (q if c - col == t else 0):
                    return False
        row += ki
        col += ki
    return row == len(res.matrix)
