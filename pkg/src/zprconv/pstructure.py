"""p-linear combinations, p-generator sequences and p-bases.

A p-linear combination uses coefficient polynomials whose coefficients are
digits in {0, ..., p-1}.  Membership and independence are decided exactly by
solving level by level: a vector of p-valuation l only influences the
residue classes mod p^(l+1) and above, so at level l the unknown digits are
those of the vectors of valuation l and the constraint is linear over Z_p.
Carries from earlier levels are pushed into the residual explicitly.  A level
whose vectors are dependent over Z_p(D) forces a (capped) branch over the
kernel of that level.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import _fp
from .errors import BoundTooSmall, ContextMismatch, SearchTooLarge
from .poly import Polynomial, _mod_p, _pmul, _psub, _trim
from .ring import RingContext

PVector = tuple  # tuple[Polynomial, ...]
PSequence = Sequence  # ordered sequence of PVector

SEARCH_CAP = 2**16


def pvector(values, ctx: RingContext) -> PVector:
    """Coerce ints / coefficient lists / polynomials into a PVector."""
    out = []
    for v in values:
        if isinstance(v, (list, tuple)):
            out.append(Polynomial(v, ctx))
        else:
            out.append(Polynomial.coerce(v, ctx))
    return tuple(out)


def _ctx_of(*groups) -> RingContext:
    ctx = None
    for g in groups:
        for v in g:
            for x in v:
                if ctx is None:
                    ctx = x.ctx
                elif x.ctx != ctx:
                    raise ContextMismatch(f"{ctx} vs {x.ctx}")
    return ctx


def _max_degree(vectors) -> int:
    return max((x.degree for v in vectors for x in v), default=-1)


def is_digit_polynomial(f: Polynomial) -> bool:
    return all(c < f.ctx.p for c in f.coeffs)


@dataclass(frozen=True)
class Membership:
    member: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.member


def _vec_valuation(v, ctx) -> int:
    return min((ctx.valuation(c) for x in v for c in x), default=ctx.r)


class _Solver:
    """Exact search for digit polynomials a_j with sum a_j v_j == target."""

    def __init__(self, gens, bound: int, ctx: RingContext, cap: int = SEARCH_CAP):
        self.ctx = ctx
        self.bound = bound
        self.cap = cap
        self.gens = [tuple(x.coeffs for x in v) for v in gens]
        self.n = len(self.gens[0]) if self.gens else 0
        self.order = [_vec_valuation(v, ctx) for v in self.gens]
        p = ctx.p
        self.reduced = []
        for v, o in zip(self.gens, self.order):
            q = p**o if o < ctx.r else 1
            self.reduced.append([_mod_p(tuple(c // q for c in x), p) for x in v])
        self.levels = [[j for j, o in enumerate(self.order) if o == l] for l in range(ctx.r)]
        self.zero_gens = [j for j, o in enumerate(self.order) if o == ctx.r]
        self.nodes = 0
        self._full_rank = {}

    def level_full_rank(self, l: int) -> bool:
        if l not in self._full_rank:
            J = self.levels[l]
            rows = [self.reduced[j] for j in J]
            self._full_rank[l] = not J or _fp.rank(rows, self.ctx.p) == len(J)
        return self._full_rank[l]

    def solve(self, target, nonzero: bool = False):
        ctx = self.ctx
        k = len(self.gens)
        if nonzero and self.zero_gens:
            a = [()] * k
            a[self.zero_gens[0]] = (1,)
            if not any(target):
                return a
        if nonzero and all(self.level_full_rank(l) for l in range(ctx.r)):
            # digit polynomials are nonzero exactly when nonzero mod p, so a
            # nontrivial relation would first appear as a Z_p(D) dependency
            return None
        self.nodes = 0
        return self._dfs(0, list(target), [()] * k, nonzero)

    def _dfs(self, level, residual, choice, nonzero):
        ctx = self.ctx
        p, m, r = ctx.p, ctx.modulus, ctx.r
        self.nodes += 1
        if self.nodes > self.cap:
            raise SearchTooLarge(f"more than {self.cap} search nodes")
        if level == r:
            if any(residual):
                return None
            if nonzero and not any(choice):
                return None
            return list(choice)
        q = p**level
        tbar = [_mod_p(tuple(c // q for c in x), p) for x in residual]
        J = self.levels[level]
        if not J:
            if any(tbar):
                return None
            return self._dfs(level + 1, residual, choice, nonzero)
        for digits in self._level_candidates(level, J, tbar):
            new_res = residual
            new_choice = list(choice)
            for j, a in zip(J, digits):
                if a:
                    new_choice[j] = a
                    new_res = [_psub(x, _pmul(a, g, m), m) for x, g in zip(new_res, self.gens[j])]
            found = self._dfs(level + 1, new_res, new_choice, nonzero)
            if found is not None:
                return found
        return None

    def _level_candidates(self, level, J, tbar):
        p, B = self.ctx.p, self.bound
        rows = [self.reduced[j] for j in J]
        if self.level_full_rank(level):
            sol, _ = _fp.solve_left(rows, tbar, p)
            if sol is None:
                return
            digits = []
            for num, den in sol:
                if den != (1,) or len(num) - 1 > B:
                    return
                digits.append(num)
            yield digits
            return
        # dependent level: enumerate the affine solution space coefficient-wise
        width = B + 1
        maxdeg = max((len(x) for row in rows for x in row), default=0)
        E = width + maxdeg
        if any(len(x) > E for x in tbar):
            return
        A, b = [], []
        for c in range(self.n):
            for e in range(E):
                A.append([rows[jj][c][e - t] if 0 <= e - t < len(rows[jj][c]) else 0
                          for jj in range(len(J)) for t in range(width)])
                b.append(tbar[c][e] if e < len(tbar[c]) else 0)
        part, kernel = _fp.affine_solve(A, b, p)
        if part is None:
            return
        if p ** len(kernel) > self.cap:
            raise SearchTooLarge(f"level {level} kernel has dimension {len(kernel)}")
        for coeffs in itertools.product(range(p), repeat=len(kernel)):
            x = list(part)
            for f, kv in zip(coeffs, kernel):
                if f:
                    x = [(u + f * w) % p for u, w in zip(x, kv)]
            yield [_trim(x[jj * width:(jj + 1) * width]) for jj in range(len(J))]


def _check_bound(bound, *groups):
    need = max(_max_degree(g) for g in groups)
    if bound < need:
        raise BoundTooSmall(f"degree bound {bound} below input degree {need}")


def default_degree_bound(w, gens, r: int) -> int:
    """max_deg(inputs) + r * (max_deg(gens) + 1), the pipeline's witness bound."""
    d_in = max(_max_degree([w]) if w is not None else -1, _max_degree(gens), 0)
    return d_in + r * (max(_max_degree(gens), 0) + 1)


def p_span_membership(w: PVector, gens: PSequence, degree_bound: int) -> Membership:
    """Is ``w`` a p-linear combination of ``gens`` with witness degree <= bound?"""
    _check_bound(degree_bound, [w], gens)
    if not any(x.coeffs for x in w):
        ctx = w[0].ctx if w else None
        return Membership(True, tuple(Polynomial.zero(ctx) for _ in gens))
    if not gens:
        return Membership(False)
    ctx = _ctx_of([w], gens)
    solver = _Solver(gens, degree_bound, ctx)
    sol = solver.solve([x.coeffs for x in w])
    if sol is None:
        return Membership(False)
    return Membership(True, tuple(Polynomial._raw(a, ctx) for a in sol))


def is_p_linearly_independent(seq: PSequence, degree_bound: int | None = None) -> bool:
    if not seq:
        return True
    ctx = _ctx_of(seq)
    if degree_bound is None:
        degree_bound = default_degree_bound(None, seq, ctx.r)
    _check_bound(degree_bound, seq)
    solver = _Solver(seq, degree_bound, ctx)
    return solver.solve([()] * len(seq[0]), nonzero=True) is None


def dependency(seq: PSequence, degree_bound: int) -> tuple | None:
    """A nontrivial digit-polynomial relation summing to zero, if one exists."""
    if not seq:
        return None
    ctx = _ctx_of(seq)
    sol = _Solver(seq, degree_bound, ctx).solve([()] * len(seq[0]), nonzero=True)
    return None if sol is None else tuple(Polynomial._raw(a, ctx) for a in sol)


def is_p_generator_sequence(seq: PSequence) -> bool:
    """p*v_i lies in the p-span of v_{i+1}, ..., v_k for each i, and p*v_k = 0."""
    if not seq:
        return True
    ctx = _ctx_of(seq)
    bound = max(_max_degree(seq), 0)
    p = ctx.p
    for i, v in enumerate(seq):
        pv = tuple(x * p for x in v)
        if not any(x.coeffs for x in pv):
            continue
        if i == len(seq) - 1:
            return False
        if not p_span_membership(pv, seq[i + 1:], bound):
            return False
    return True


def expand_to_p_generator_sequence(gens: PSequence, drop_zeros: bool = False) -> list[PVector]:
    """(v_1, p v_1, ..., p^(r-1) v_1, v_2, ..., p^(r-1) v_k)."""
    out = []
    for v in gens:
        for i in range(v[0].ctx.r if v else 0):
            pv = tuple(x * (x.ctx.p**i) for x in v)
            if drop_zeros and not any(x.coeffs for x in pv):
                continue
            out.append(pv)
    return out


def p_dimension_formula(k_list: Sequence[int]) -> int:
    """sum_i (r - i) k_i with r = len(k_list)."""
    r = len(k_list)
    if any(k < 0 for k in k_list):
        raise ValueError("k_i must be non-negative")
    return sum((r - i) * k for i, k in enumerate(k_list))
