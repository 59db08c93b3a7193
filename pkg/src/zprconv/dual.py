"""Dual codes: the free construction, the general construction, and audits."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .code import (
    ConvolutionalCode,
    code_equal,
    code_sum,
    contains,
    decompose,
    is_free,
    sum_and_intersection,
)
from .errors import NotFree
from .matrix import (
    PolyMatrix,
    RationalMatrix,
    clear_denominators,
    complete_to_invertible,
    full_row_rank,
    invert_matrix,
    reduce_rows,
)
from .poly import Polynomial, RationalFunction
from .report import VerificationReport


@dataclass(frozen=True)
class DualResult:
    """C^perp = B_0 + p B_1 + ... + p^(r-1) B_(r-1) with every B_i free."""

    dual_code: ConvolutionalCode
    B_components: dict  # i -> PolyMatrix (rows of B_i, not yet scaled by p^i)
    provenance: str

    @property
    def ranks(self) -> dict:
        return {i: B.nrows for i, B in self.B_components.items()}

    def rank(self, i: int) -> int:
        B = self.B_components.get(i)
        return 0 if B is None else B.nrows


def orthogonal(G: PolyMatrix, H: PolyMatrix) -> bool:
    """G @ H^T is exactly the zero matrix."""
    if G.nrows == 0 or H.nrows == 0:
        return True
    return (G @ H.transpose()).is_zero()


def dual_free(C: ConvolutionalCode) -> ConvolutionalCode:
    """Dual of a free code through an invertible completion of an encoder.

    With G an encoder and L a completion, the last n - k columns Y of
    [G; L]^{-1} satisfy G Y = 0 and span the dual; Y^T is cleared of
    denominators to give a polynomial encoder.
    """
    if not is_free(C):
        raise NotFree(f"code with parameters {C.k_list} is not free")
    ctx, n = C.ctx, C.n
    comps = decompose(C).components
    if not comps:
        return ConvolutionalCode.full(ctx, n)
    G = comps[0]
    k = G.nrows
    if k == n:
        return ConvolutionalCode.zero(ctx, n)
    L = complete_to_invertible(G)
    inv = invert_matrix(G.vstack(L))
    Y_T = RationalMatrix._raw([[inv.entries[i][j] for i in range(n)] for j in range(k, n)], ctx)
    return ConvolutionalCode(reduce_rows(clear_denominators(Y_T)))


def dual(C: ConvolutionalCode) -> DualResult:
    """Dual of an arbitrary code read off its chain diagonalization.

    With C = Im [diag(p^a_i) | 0] V, let c_i be the columns of V^{-1}.  Then
    c_i generates B_0 for the columns beyond the diagonal, and c_i with
    a_i >= 1 generates B_(r - a_i), contributing p^(r - a_i) c_i.
    """
    ctx, n = C.ctx, C.n
    p, r = ctx.p, ctx.r
    d = C.diag
    Vinv = d.V_inv
    cols = [[Vinv.entries[j][i] for j in range(n)] for i in range(n)]
    groups: dict[int, list] = {}
    gen_rows = []
    for i, col in enumerate(cols):
        if i >= d.s:
            groups.setdefault(0, []).append(col)
            gen_rows.append(col)
        elif d.exponents[i] >= 1:
            a = d.exponents[i]
            groups.setdefault(r - a, []).append(col)
            scale = RationalFunction._raw((p ** (r - a),), (1,), ctx)
            gen_rows.append([x * scale for x in col])
    B = {i: reduce_rows(clear_denominators(RationalMatrix._raw(rows, ctx))) for i, rows in groups.items()}
    if gen_rows:
        code = ConvolutionalCode(reduce_rows(clear_denominators(RationalMatrix._raw(gen_rows, ctx))))
    else:
        code = ConvolutionalCode.zero(ctx, n)
    return DualResult(code, B, "chain-diagonalization")


def _random_poly(rng: random.Random, ctx, max_deg: int) -> Polynomial:
    return Polynomial([rng.randrange(ctx.modulus) for _ in range(max_deg + 1)], ctx)


def _random_vector(rng, ctx, n, max_deg=1):
    return [_random_poly(rng, ctx, max_deg) for _ in range(n)]


def _combination(rng, C: ConvolutionalCode, max_deg=1):
    ctx = C.ctx
    out = [Polynomial.zero(ctx)] * C.n
    for g in C.generator.entries:
        u = _random_poly(rng, ctx, max_deg)
        out = [a + u * b for a, b in zip(out, g)]
    return out


def _free_code_checks(report, F: ConvolutionalCode, label: str, trials: int, rng: random.Random):
    ctx, n = F.ctx, F.n
    p, r = ctx.p, ctx.r
    Fd = dual(F).dual_code
    for i in range(r):
        lhs = dual(F.scaled(p**i)).dual_code
        rhs = code_sum(Fd, ConvolutionalCode.full(ctx, n, p ** (r - i)))
        report.add(f"(d) {label}: (p^{i} C)^perp == C^perp + p^{r - i} full", code_equal(lhs, rhs))
        _, meet = sum_and_intersection(F, ConvolutionalCode.full(ctx, n, p**i))
        report.add(f"(e) {label}: C & p^{i} full == p^{i} C", code_equal(meet, F.scaled(p**i)))
    widened = {i: code_sum(F, ConvolutionalCode.full(ctx, n, p ** (r - i))) for i in range(r)}
    held = hits = 0
    for t in range(trials):
        i = rng.randrange(r)
        if t % 2 == 0:
            z = _random_vector(rng, ctx, n)
            y = [a + b * p ** (r - i) for a, b in zip(_combination(rng, F), z)]
        else:
            y = _random_vector(rng, ctx, n)
        if not contains(F, [x * p**i for x in y]):
            continue
        hits += 1
        held += contains(widened[i], y)
    report.add(f"(f) {label}: p^i y in C implies y in C + p^(r-i) full", held == hits,
               expected=hits, actual=held)


def verify_duality_identities(C: ConvolutionalCode, trials: int = 20, seed: int = 0) -> VerificationReport:
    """Audit the duality identities for C; failures become report entries.

    The identities about free codes are applied to C itself when C is free and
    otherwise to the free code spanned by the stacked decomposition
    components.
    """
    rng = random.Random(seed)
    report = VerificationReport(seed=seed)
    ctx, n = C.ctx, C.n
    nr = n * ctx.r
    res = dual(C)
    D = res.dual_code
    report.add("(a) p-dim(C) + p-dim(C^perp) == nr", C.p_dim + D.p_dim == nr,
               expected=nr, actual=C.p_dim + D.p_dim)
    report.add("(b) generators of C and C^perp are orthogonal", orthogonal(C.generator, D.generator))
    report.add("(c) (C^perp)^perp == C", code_equal(dual(D).dual_code, C))
    k = C.k_list
    r = ctx.r
    expect = {0: n - sum(k)}
    expect.update({i: k[r - i] for i in range(1, r)})
    got = {i: res.rank(i) for i in range(r)}
    report.add("rank(B_0) == n - sum k_i and rank(B_i) == k_(r-i)", got == expect, expected=expect, actual=got)
    report.add("B_i are free", all(full_row_rank(B) for B in res.B_components.values()))
    if is_free(C):
        report.add("free dual agrees with general dual", code_equal(dual_free(C), D))
        _free_code_checks(report, C, "C", trials, rng)
    else:
        F = ConvolutionalCode(decompose(C).stacked())
        _free_code_checks(report, F, "stacked components", trials, rng)
    return report
