"""Seeded random generators, invertible matrices and code corpora.

All randomness goes through a ``random.Random`` instance supplied by the
caller so every corpus is reproducible from its seed.
"""

from __future__ import annotations

import random

from .code import ConvolutionalCode
from .matrix import PolyMatrix, full_row_rank
from .poly import Polynomial
from .ring import RingContext


def random_poly(ctx: RingContext, rng: random.Random, max_deg: int) -> Polynomial:
    d = rng.randint(0, max_deg)
    return Polynomial([rng.randrange(ctx.modulus) for _ in range(d + 1)], ctx)


def random_unit(ctx: RingContext, rng: random.Random, max_deg: int = 1) -> Polynomial:
    """A polynomial that is nonzero mod p, hence a unit of the Laurent ring."""
    while True:
        u = random_poly(ctx, rng, max_deg)
        if u.is_laurent_unit():
            return u


def random_generator(ctx: RingContext, rng: random.Random, n: int, k: int, max_deg: int = 2,
                     scale_rows: bool = True) -> PolyMatrix:
    """k x n polynomial matrix; with ``scale_rows`` each row gets a random
    factor p^e, 0 <= e < r, so non-free codes show up regularly."""
    rows = []
    for _ in range(k):
        e = rng.randrange(ctx.r) if scale_rows else 0
        q = ctx.p**e
        rows.append([random_poly(ctx, rng, max_deg) * q for _ in range(n)])
    return PolyMatrix(rows, ctx)


def random_code(ctx: RingContext, rng: random.Random, max_n: int = 4, max_k: int = 4,
                max_deg: int = 2) -> ConvolutionalCode:
    n = rng.randint(1, max_n)
    k = rng.randint(1, max_k)
    return ConvolutionalCode(random_generator(ctx, rng, n, k, max_deg))


def random_block_code(ctx: RingContext, rng: random.Random, max_n: int = 4, max_k: int = 4) -> ConvolutionalCode:
    return random_code(ctx, rng, max_n, max_k, max_deg=0)


def random_free_code(ctx: RingContext, rng: random.Random, max_n: int = 4,
                     max_deg: int = 2) -> ConvolutionalCode:
    """Code with a full-row-rank generator of 1 <= k <= n rows."""
    n = rng.randint(1, max_n)
    k = rng.randint(1, n)
    while True:
        G = random_generator(ctx, rng, n, k, max_deg, scale_rows=False)
        if full_row_rank(G):
            return ConvolutionalCode(G)


def random_invertible(ctx: RingContext, rng: random.Random, k: int, steps: int = 6,
                      max_deg: int = 1) -> PolyMatrix:
    """Product of random elementary operations over the Laurent ring:
    row swaps, row additions with polynomial multipliers, and scalings by
    Laurent units."""
    M = PolyMatrix.identity(k, ctx)
    rows = [list(r) for r in M.entries]
    for _ in range(steps):
        kind = rng.randrange(3)
        if kind == 0 and k > 1:
            i, j = rng.sample(range(k), 2)
            rows[i], rows[j] = rows[j], rows[i]
        elif kind == 1 and k > 1:
            i, j = rng.sample(range(k), 2)
            c = random_poly(ctx, rng, max_deg)
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        else:
            i = rng.randrange(k)
            u = random_unit(ctx, rng, max_deg)
            rows[i] = [a * u for a in rows[i]]
    return PolyMatrix._raw(rows, ctx)


def code_corpus(ctx: RingContext, count: int, seed: int = 0, max_n: int = 4, max_k: int = 4,
                max_deg: int = 2) -> list[ConvolutionalCode]:
    rng = random.Random(seed)
    return [random_code(ctx, rng, max_n, max_k, max_deg) for _ in range(count)]
