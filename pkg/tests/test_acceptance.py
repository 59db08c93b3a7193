"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected in RESULTS and repeated in the pytest terminal
summary, so they show up without ``-s``.
"""

import random
import time

import pytest

from zprconv.code import (
    ConvolutionalCode,
    code_equal,
    code_sum,
    contains,
    decompose,
    is_free,
    p_encoder,
    sum_and_intersection,
)
from zprconv.corpus import code_corpus, random_block_code, random_free_code, random_invertible
from zprconv.dual import dual, dual_free, orthogonal
from zprconv.matrix import PolyMatrix, RationalMatrix
from zprconv.oracle import (
    brute_dual_block,
    brute_p_span,
    brute_span,
    constant_part,
    enumerate_block_code,
    fits_oracle,
)
from zprconv.poly import Polynomial, RationalFunction
from zprconv.pstructure import (
    expand_to_p_generator_sequence,
    is_p_generator_sequence,
    is_p_linearly_independent,
)
from zprconv.ring import RingContext

CONTEXTS = [(2, 2), (2, 3), (3, 2)]
CORPUS_SIZE = 200
FREE_COUNT = 50
RESULTS: dict[int, str] = {}

_corpora: dict = {}


def corpus(p, r):
    if (p, r) not in _corpora:
        _corpora[p, r] = code_corpus(RingContext(p, r), CORPUS_SIZE, seed=1000 + 10 * p + r)
    return _corpora[p, r]


def record(n, description, failures):
    line = f"[{'PASS' if not failures else 'FAIL'}] criterion {n}: {description}"
    if failures:
        line += f" ({len(failures)} failures, first: {failures[0]})"
    RESULTS[n] = line
    print(line)
    assert not failures, line


def test_criterion_1_duality_dimension_identity():
    start = time.perf_counter()
    failures, total = [], 0
    for p, r in CONTEXTS:
        for idx, C in enumerate(corpus(p, r)):
            total += 1
            D = dual(C).dual_code
            if C.p_dim + D.p_dim != C.n * r:
                failures.append(((p, r), idx, C.p_dim, D.p_dim))
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        failures.append(f"runtime {elapsed:.1f}s >= 60s")
    record(1, f"p-dim(C) + p-dim(C^perp) == nr on {total} codes in {elapsed:.1f}s", failures)


def test_criterion_2_free_dual():
    failures, total = [], 0
    for p, r in CONTEXTS:
        ctx = RingContext(p, r)
        rng = random.Random(2000 + p + r)
        codes = [C for C in corpus(p, r) if is_free(C)]
        codes += [random_free_code(ctx, rng) for _ in range(FREE_COUNT)]
        for idx, C in enumerate(codes):
            total += 1
            Df = dual_free(C)
            ok = (is_free(Df) and Df.rank == C.n - C.rank and orthogonal(C.generator, Df.generator)
                  and code_equal(Df, dual(C).dual_code))
            if not ok:
                failures.append(((p, r), idx))
    record(2, f"dual_free is free of rank n-k, orthogonal, equal to dual ({total} free codes)", failures)


def test_criterion_3_dual_decomposition_ranks():
    failures, total = [], 0
    for p, r in CONTEXTS:
        for idx, C in enumerate(corpus(p, r)):
            total += 1
            res = dual(C)
            k = C.k_list
            expect = [C.n - sum(k)] + [k[r - i] for i in range(1, r)]
            got = [res.rank(i) for i in range(r)]
            kd = decompose(res.dual_code).k_list
            if got != expect or list(kd) != expect:
                failures.append(((p, r), idx, expect, got, kd))
    record(3, f"rank(B_0) == n - sum k_i, rank(B_i) == k_(r-i) on {total} codes", failures)


def test_criterion_4_block_code_ground_truth():
    start = time.perf_counter()
    failures, total = [], 0
    for p, r in CONTEXTS:
        ctx = RingContext(p, r)
        rng = random.Random(4000 + p + r)
        codes = [C for C in corpus(p, r) if C.is_block()]
        codes += [random_block_code(ctx, rng) for _ in range(CORPUS_SIZE)]
        for idx, C in enumerate(codes):
            if not fits_oracle(ctx, C.n):
                continue
            total += 1
            words = enumerate_block_code(C.generator)
            brute = brute_dual_block(C.generator)
            engine = constant_part(dual(C).dual_code)
            ok = (len(words) == p**C.p_dim and brute == engine and len(words) * len(brute) == ctx.modulus**C.n)
            if not ok:
                failures.append(((p, r), idx))
    elapsed = time.perf_counter() - start
    if elapsed >= 30:
        failures.append(f"runtime {elapsed:.1f}s >= 30s")
    record(4, f"|C| = p^p-dim, brute dual = engine dual, |C||C^perp| = p^(nr) on {total} block codes "
              f"in {elapsed:.1f}s", failures)


def _tiny_generators(ctx, rng):
    n = rng.randint(1, 2)
    k = rng.randint(1, 2)
    return [tuple(Polynomial([rng.randrange(ctx.modulus) for _ in range(rng.randint(1, 2))], ctx)
                  for _ in range(n)) for _ in range(k)]


def test_criterion_5_p_structure():
    failures, checked = [], 0
    for p, r in CONTEXTS:
        for idx, C in enumerate(corpus(p, r)):
            enc = list(p_encoder(C).rows)
            if not (is_p_generator_sequence(enc) and is_p_linearly_independent(enc)):
                failures.append(("p-encoder", (p, r), idx))
            rows = [tuple(g) for g in C.generator]
            if not is_p_generator_sequence(expand_to_p_generator_sequence(rows)):
                failures.append(("expansion", (p, r), idx))
            checked += 1
    rng = random.Random(5)
    tiny = 0
    for p, r in [(2, 2), (2, 1), (3, 1)]:
        ctx = RingContext(p, r)
        for _ in range(25):
            gens = _tiny_generators(ctx, rng)
            seq = expand_to_p_generator_sequence(gens)
            for bound in (0, 1):
                tiny += 1
                if brute_p_span(seq, bound) != brute_span(gens, bound):
                    failures.append(("span", (p, r), gens, bound))
    record(5, f"p-encoders and expansions validate on {checked} codes; "
              f"p-span == span on {tiny} tiny instances", failures)


def _random_vector(ctx, rng, n):
    return [Polynomial([rng.randrange(ctx.modulus) for _ in range(2)], ctx) for _ in range(n)]


def _combination(C, ctx, rng):
    out = [Polynomial.zero(ctx)] * C.n
    for g in C.generator:
        u = Polynomial([rng.randrange(ctx.modulus) for _ in range(2)], ctx)
        out = [a + u * b for a, b in zip(out, g)]
    return out


def test_criterion_6_free_code_identities():
    failures, total, membership_hits = [], 0, 0
    for p, r in CONTEXTS:
        ctx = RingContext(p, r)
        rng = random.Random(6000 + p + r)
        for idx in range(FREE_COUNT):
            C = random_free_code(ctx, rng)
            total += 1
            n, k = C.n, C.rank
            Cd = dual(C).dual_code
            other = random_free_code(ctx, rng, max_n=n)
            if other.n != n:
                other = ConvolutionalCode(PolyMatrix.identity(n, ctx) * p ** rng.randrange(r))
            s, m = sum_and_intersection(C, other)
            if s.p_dim + m.p_dim != C.p_dim + other.p_dim:
                failures.append(("sum/intersection", (p, r), idx))
            widened = {}
            for i in range(r):
                pC = C.scaled(p**i)
                if pC.p_dim != (r - i) * k:
                    failures.append(("p-dim of p^i C", (p, r), idx, i))
                if not code_equal(sum_and_intersection(C, ConvolutionalCode.full(ctx, n, p**i))[1], pC):
                    failures.append(("C & p^i full", (p, r), idx, i))
                rhs = code_sum(Cd, ConvolutionalCode.full(ctx, n, p ** (r - i)))
                if not code_equal(dual(pC).dual_code, rhs):
                    failures.append(("(p^i C)^perp", (p, r), idx, i))
                widened[i] = code_sum(C, ConvolutionalCode.full(ctx, n, p ** (r - i)))
            for t in range(8):
                i = rng.randrange(r)
                if t % 2 == 0:
                    z = _random_vector(ctx, rng, n)
                    y = [a + b * p ** (r - i) for a, b in zip(_combination(C, ctx, rng), z)]
                else:
                    y = _random_vector(ctx, rng, n)
                if contains(C, [x * p**i for x in y]):
                    membership_hits += 1
                    if not contains(widened[i], y):
                        failures.append(("y membership", (p, r), idx, i))
    if membership_hits == 0:
        failures.append("no y with p^i y in C was exercised")
    record(6, f"free-code identities on {total} free codes ({membership_hits} membership instances)", failures)


def test_criterion_7_invariance():
    failures, total = [], 0
    for p, r in CONTEXTS:
        ctx = RingContext(p, r)
        rng = random.Random(7000 + p + r)
        D = Polynomial([0, 1], ctx)
        for idx, C in enumerate(corpus(p, r)):
            G = C.generator
            k = G.nrows
            for _ in range(20):
                total += 1
                C2 = ConvolutionalCode(random_invertible(ctx, rng, k) @ G)
                if C2.k_list != C.k_list or C2.p_dim != C.p_dim:
                    failures.append(("left factor", (p, r), idx))
            i = rng.randrange(k)
            m = rng.randint(1, 3)
            rows = [list(row) for row in G]
            up = [list(row) for row in rows]
            up[i] = [x * D**m for x in up[i]]
            down = [[RationalFunction(x) for x in row] for row in rows]
            down[i] = [x / RationalFunction(D**m) for x in down[i]]
            for H in (PolyMatrix._raw(up, ctx), RationalMatrix._raw(down, ctx)):
                total += 1
                C3 = ConvolutionalCode(H)
                if C3.k_list != C.k_list or C3.p_dim != C.p_dim or not code_equal(C3, C):
                    failures.append(("row times D^m", (p, r), idx, m))
    record(7, f"k_list and p-dim invariant under {total} transformations", failures)


def test_criterion_8_worked_examples():
    Z4 = RingContext(2, 2)
    failures = []

    def im(rows):
        return ConvolutionalCode.from_coeffs(rows, Z4)

    pairs = [
        ("Im[1 1] <-> Im[1 3]", im([[1, 1]]), im([[1, 3]])),
        ("Im[1+D, D] <-> Im[3D, 1+D]", im([[[1, 1], [0, 1]]]), im([[[0, 3], [1, 1]]])),
        ("Im[[1,2],[0,2]] <-> Im[0 2]", im([[1, 2], [0, 2]]), im([[0, 2]])),
        ("Im[2] self-dual", im([[2]]), im([[2]])),
    ]
    for name, C, expected in pairs:
        Dc = dual(C).dual_code
        if not (code_equal(Dc, expected) and code_equal(dual(expected).dual_code, C)):
            failures.append(name)
        if C.p_dim + Dc.p_dim != C.n * 2 or not orthogonal(C.generator, expected.generator):
            failures.append(name + " dimensions")
        if is_free(C) and not code_equal(dual_free(C), expected):
            failures.append(name + " free dual")
    if (im([[1, 2], [0, 2]]).p_dim, im([[0, 2]]).p_dim) != (3, 1):
        failures.append("p-dims 3 + 1")
    if (im([[2]]).p_dim, dual(im([[2]])).dual_code.p_dim) != (1, 1):
        failures.append("p-dims 1 + 1")
    if set(brute_dual_block(PolyMatrix.from_constant([[1, 2], [0, 2]], Z4))) != {(0, 0), (0, 2)}:
        failures.append("exhaustive dual of Im[[1,2],[0,2]]")
    if set(brute_dual_block(PolyMatrix.from_constant([[1, 1]], Z4))) != set(enumerate_block_code(
            PolyMatrix.from_constant([[1, 3]], Z4))):
        failures.append("exhaustive dual of Im[1 1]")
    record(8, "Z4 worked examples reproduce", failures)
