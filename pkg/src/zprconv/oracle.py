"""Brute-force ground truth for small instances.

Everything here enumerates explicitly and refuses to run past
``ORACLE_CAP`` elements; none of it shares code paths with the
diagonalization beyond the polynomial types.
"""

from __future__ import annotations

import itertools
from typing import Iterable

from .errors import DimensionMismatch, TooLarge
from .matrix import PolyMatrix
from .poly import Polynomial, _padd, _pmul, _trim
from .report import VerificationReport
from .ring import RingContext

ORACLE_CAP = 2**16

Vector = tuple  # tuple of ints over Z_{p^r}


def _add(x, y, m):
    return tuple((a + b) % m for a, b in zip(x, y))


def _scale(x, c, m):
    return tuple(a * c % m for a in x)


def _z_span(gens: Iterable[Vector], n: int, ctx: RingContext) -> set:
    """All Z_{p^r}-combinations of the given constant vectors."""
    m = ctx.modulus
    span = {(0,) * n}
    for g in gens:
        if g in span:
            continue
        multiples = {_scale(g, c, m) for c in range(m)}
        span = {_add(x, y, m) for x in span for y in multiples}
        if len(span) > ORACLE_CAP:
            raise TooLarge(f"span exceeds {ORACLE_CAP} elements")
    return span


class CodewordSet:
    """An explicit finite submodule of Z_{p^r}^n.

    Closure is checked at construction: a generating subset is picked
    greedily and its span must be the set itself.
    """

    def __init__(self, vectors: Iterable[Vector], ctx: RingContext, n: int):
        vecs = frozenset(tuple(int(a) for a in v) for v in vectors)
        if any(len(v) != n for v in vecs):
            raise DimensionMismatch(f"vectors must have length {n}")
        if any(not 0 <= a < ctx.modulus for v in vecs for a in v):
            raise ValueError("entries must be reduced residues")
        span = {(0,) * n}
        m = ctx.modulus
        for v in sorted(vecs):
            if v not in span:
                span = {_add(x, _scale(v, c, m), m) for x in span for c in range(m)}
                if len(span) > len(vecs):
                    break
        if span != vecs:
            raise ValueError("vector set is not closed under addition and scaling")
        self.vectors = vecs
        self.ctx = ctx
        self.n = n

    def __len__(self):
        return len(self.vectors)

    def __contains__(self, v):
        return tuple(v) in self.vectors

    def __iter__(self):
        return iter(sorted(self.vectors))

    def __eq__(self, other):
        if not isinstance(other, CodewordSet):
            return NotImplemented
        return self.ctx == other.ctx and self.vectors == other.vectors

    __hash__ = None

    def __repr__(self):
        return f"CodewordSet({len(self)} words, n={self.n})"


def _constant_rows(G, ctx):
    if isinstance(G, PolyMatrix):
        if not G.is_constant():
            raise ValueError("block code generator must be constant")
        return G.constant_rows(), G.ncols
    rows = [[int(x) for x in r] for r in G]
    return rows, (len(rows[0]) if rows else 0)


def _check_ambient(ctx: RingContext, n: int):
    if ctx.modulus**n > ORACLE_CAP:
        raise TooLarge(f"p^(nr) = {ctx.modulus ** n} exceeds {ORACLE_CAP}")


def enumerate_block_code(G, ctx: RingContext | None = None, n: int | None = None) -> CodewordSet:
    """{uG : u in Z_{p^r}^k} for a constant generator."""
    ctx = G.ctx if isinstance(G, PolyMatrix) else ctx
    rows, ncols = _constant_rows(G, ctx)
    n = ncols if n is None else n
    _check_ambient(ctx, n)
    m = ctx.modulus
    return CodewordSet(_z_span((tuple(x % m for x in r) for r in rows), n, ctx), ctx, n)


def ambient(ctx: RingContext, n: int):
    _check_ambient(ctx, n)
    return itertools.product(range(ctx.modulus), repeat=n)


def brute_dual_block(G, ctx: RingContext | None = None, n: int | None = None) -> CodewordSet:
    """All y in Z_{p^r}^n with [y, g] = 0 for every generator row g.

    Orthogonality to the rows is equivalent to orthogonality to every
    codeword, since the codewords are their combinations.
    """
    ctx = G.ctx if isinstance(G, PolyMatrix) else ctx
    rows, ncols = _constant_rows(G, ctx)
    n = ncols if n is None else n
    m = ctx.modulus
    out = [y for y in ambient(ctx, n) if all(sum(a * b for a, b in zip(y, g)) % m == 0 for g in rows)]
    return CodewordSet(out, ctx, n)


def constant_part(code) -> CodewordSet:
    """Constant vectors of a convolutional code.

    For a constant generator these are exactly its Z_{p^r}-span (compare the
    D^0 coefficient of a combination); otherwise every vector of the
    ambient space is tested for membership.
    """
    ctx, n = code.ctx, code.n
    if code.generator.is_constant():
        _check_ambient(ctx, n)
        return CodewordSet(_z_span((tuple(r) for r in code.generator.constant_rows()), n, ctx), ctx, n)
    from .code import contains

    return CodewordSet((y for y in ambient(ctx, n) if contains(code, list(y))), ctx, n)


def orthogonality_check(G: PolyMatrix, H: PolyMatrix) -> bool:
    """G @ H^T == 0 over Z_{p^r}[D], computed entry by entry."""
    if G.ncols != H.ncols:
        raise DimensionMismatch(f"{G.ncols} vs {H.ncols} columns")
    m = G.ctx.modulus
    for g in G.entries:
        for h in H.entries:
            acc = ()
            for a, b in zip(g, h):
                acc = _padd(acc, _pmul(a.coeffs, b.coeffs, m), m)
            if acc:
                return False
    return True


def _poly_span(gens, coeff_choices, degree_bound, ctx, n):
    m = ctx.modulus
    gens = [tuple(x.coeffs if isinstance(x, Polynomial) else Polynomial.coerce(x, ctx).coeffs for x in v) for v in gens]
    width = degree_bound + 1
    total = len(coeff_choices) ** (width * len(gens))
    if total > ORACLE_CAP:
        raise TooLarge(f"{total} coefficient tuples exceed {ORACLE_CAP}")
    polys = [_trim(c) for c in itertools.product(coeff_choices, repeat=width)]
    out = set()
    for combo in itertools.product(polys, repeat=len(gens)):
        acc = [()] * n
        for a, v in zip(combo, gens):
            if a:
                acc = [_padd(s, _pmul(a, x, m), m) for s, x in zip(acc, v)]
        out.add(tuple(acc))
    return out


def brute_p_span(gens, degree_bound: int, ctx: RingContext | None = None, n: int | None = None) -> set:
    """Every digit-polynomial combination of ``gens`` with degree <= bound.

    Vectors come back as tuples of coefficient tuples.  With no generators
    the result is the zero vector alone, which needs ``n``.
    """
    if gens:
        ctx = ctx or gens[0][0].ctx
        n = len(gens[0])
    if n is None:
        raise ValueError("n is required when gens is empty")
    return _poly_span(gens, range(ctx.p), degree_bound, ctx, n)


def brute_span(gens, degree_bound: int, ctx: RingContext | None = None, n: int | None = None) -> set:
    """Every Z_{p^r}[D]-combination of ``gens`` with coefficient degree <= bound."""
    if gens:
        ctx = ctx or gens[0][0].ctx
        n = len(gens[0])
    if n is None:
        raise ValueError("n is required when gens is empty")
    return _poly_span(gens, range(ctx.modulus), degree_bound, ctx, n)


def block_code_checks(code, report: VerificationReport | None = None) -> VerificationReport:
    """Exhaustive checks for a block code: size, dual, and |C||C^perp| = p^(nr)."""
    from .dual import dual

    report = report if report is not None else VerificationReport()
    ctx, n = code.ctx, code.n
    words = enumerate_block_code(code.generator)
    report.add("|C| == p^p-dim", len(words) == ctx.p**code.p_dim, expected=ctx.p**code.p_dim, actual=len(words))
    brute = brute_dual_block(code.generator)
    engine = constant_part(dual(code).dual_code)
    report.add("brute-force dual == constant part of dual", brute == engine,
               expected=len(brute), actual=len(engine))
    total = ctx.modulus**n
    report.add("|C| * |C^perp| == p^(nr)", len(words) * len(brute) == total,
               expected=total, actual=len(words) * len(brute))
    return report


def fits_oracle(ctx: RingContext, n: int) -> bool:
    return ctx.modulus**n <= ORACLE_CAP
