import itertools
import random

import pytest
from hypothesis import given, strategies as st

from zprconv.code import ConvolutionalCode, p_encoder
from zprconv.corpus import random_generator
from zprconv.errors import BoundTooSmall
from zprconv.oracle import brute_p_span, brute_span
from zprconv.poly import Polynomial
from zprconv.pstructure import (
    dependency,
    expand_to_p_generator_sequence,
    is_digit_polynomial,
    is_p_generator_sequence,
    is_p_linearly_independent,
    p_dimension_formula,
    p_span_membership,
    pvector,
)
from zprconv.ring import RingContext

TINY = [RingContext(2, 1), RingContext(2, 2), RingContext(3, 1)]


def vecs(rows, ctx):
    return [pvector(r, ctx) for r in rows]


def test_membership_examples(Z4):
    assert not p_span_membership(pvector([2, 2], Z4), vecs([[1, 1]], Z4), 0)
    res = p_span_membership(pvector([3, 3], Z4), vecs([[1, 1], [2, 2]], Z4), 0)
    assert res.member
    assert [w.coeffs for w in res.witness] == [(1,), (1,)]
    zero = p_span_membership(pvector([0, 0], Z4), vecs([[1, 1]], Z4), 0)
    assert zero.member and all(w.is_zero() for w in zero.witness)


def test_membership_bound_check(Z4):
    with pytest.raises(BoundTooSmall):
        p_span_membership(pvector([[1, 1], 0], Z4), vecs([[1, 1]], Z4), 0)


def test_generator_sequence_examples(Z4):
    assert not is_p_generator_sequence(vecs([[1, 1]], Z4))
    assert is_p_generator_sequence(vecs([[1, 1], [2, 2]], Z4))
    assert is_p_generator_sequence(vecs([[2, 2]], Z4))


def test_expansion_examples(Z4):
    out = expand_to_p_generator_sequence(vecs([[1, 1]], Z4))
    assert out == vecs([[1, 1], [2, 2]], Z4)
    out = expand_to_p_generator_sequence(vecs([[1, 0], [0, 1]], Z4))
    assert out == vecs([[1, 0], [2, 0], [0, 1], [0, 2]], Z4)
    assert expand_to_p_generator_sequence(vecs([[2, 0]], Z4)) == vecs([[2, 0], [0, 0]], Z4)
    assert expand_to_p_generator_sequence(vecs([[2, 0]], Z4), drop_zeros=True) == vecs([[2, 0]], Z4)


def test_independence_examples(Z4):
    assert is_p_linearly_independent(vecs([[1, 1], [2, 2]], Z4), 2)
    assert not is_p_linearly_independent(vecs([[2, 0], [2, 0]], Z4), 0)
    assert is_p_linearly_independent([], 0)
    with pytest.raises(BoundTooSmall):
        is_p_linearly_independent(vecs([[[0, 1], 0]], Z4), 0)


def test_dependency_witness(Z4):
    rel = dependency(vecs([[2, 0], [2, 0]], Z4), 0)
    assert rel is not None and all(is_digit_polynomial(a) for a in rel)
    assert [a.coeffs for a in rel] == [(1,), (1,)]


@pytest.mark.parametrize("ks,expected", [((1, 1), 3), ((2, 0, 0), 6), ((0, 0), 0), ((0, 1, 2), 4)])
def test_p_dimension_formula(ks, expected):
    assert p_dimension_formula(ks) == expected


def _random_vectors(ctx, rng, k, n, max_deg):
    return [tuple(Polynomial([rng.randrange(ctx.modulus) for _ in range(rng.randint(1, max_deg + 1))], ctx)
                  for _ in range(n)) for _ in range(k)]


def _key(v):
    return tuple(x.coeffs for x in v)


def test_membership_agrees_with_enumeration():
    for ctx in TINY:
        rng = random.Random(ctx.modulus)
        for _ in range(30):
            n = rng.randint(1, 2)
            gens = _random_vectors(ctx, rng, rng.randint(1, 2), n, 1)
            B = 2
            span = brute_p_span(gens, B)
            probes = [_random_vectors(ctx, rng, 1, n, 2)[0] for _ in range(6)]
            probes += [tuple(Polynomial._raw(c, ctx) for c in w) for w in sorted(span)[:8]]
            for w in probes:
                if max(x.degree for x in w) > B:
                    continue
                res = p_span_membership(w, gens, B)
                assert res.member == (_key(w) in span)
                if res.member:
                    total = [Polynomial.zero(ctx)] * n
                    for a, v in zip(res.witness, gens):
                        assert is_digit_polynomial(a) and a.degree <= B
                        total = [s + a * x for s, x in zip(total, v)]
                    assert tuple(total) == tuple(w)


def test_independence_agrees_with_enumeration():
    for ctx in TINY:
        rng = random.Random(ctx.modulus + 1)
        for _ in range(30):
            gens = _random_vectors(ctx, rng, rng.randint(1, 3), rng.randint(1, 2), 1)
            gens = [tuple(x * ctx.p ** rng.randrange(ctx.r) for x in v) for v in gens]
            B = 1
            digits = [Polynomial(c, ctx) for c in itertools.product(range(ctx.p), repeat=B + 1)]
            brute = True
            for combo in itertools.product(digits, repeat=len(gens)):
                if all(a.is_zero() for a in combo):
                    continue
                total = [Polynomial.zero(ctx)] * len(gens[0])
                for a, v in zip(combo, gens):
                    total = [s + a * x for s, x in zip(total, v)]
                if all(t.is_zero() for t in total):
                    brute = False
                    break
            assert is_p_linearly_independent(gens, B) == brute


def test_expansion_spans_the_module_on_tiny_windows():
    for ctx in [RingContext(2, 1), RingContext(2, 2), RingContext(3, 1)]:
        rng = random.Random(7 * ctx.modulus)
        for _ in range(15):
            gens = _random_vectors(ctx, rng, rng.randint(1, 2), rng.randint(1, 2), 1)
            B = 0 if ctx.modulus ** (2 * len(gens)) > 2**10 else 1
            expanded = expand_to_p_generator_sequence(gens)
            assert brute_p_span(expanded, B) == brute_span(gens, B)


@given(st.data())
def test_expansion_is_a_generator_sequence(data):
    ctx = data.draw(st.sampled_from([RingContext(2, 2), RingContext(2, 3), RingContext(3, 2)]))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    gens = _random_vectors(ctx, rng, rng.randint(1, 2), rng.randint(1, 3), 1)
    assert is_p_generator_sequence(expand_to_p_generator_sequence(gens))
    assert is_p_generator_sequence(expand_to_p_generator_sequence(gens, drop_zeros=True))


def test_p_span_of_generator_sequence_is_closed():
    ctx = RingContext(2, 2)
    rng = random.Random(3)
    for _ in range(10):
        gens = expand_to_p_generator_sequence(_random_vectors(ctx, rng, 2, 2, 1), drop_zeros=True)
        if len(gens) > 4:
            gens = gens[:2] + gens[-2:]
            if not is_p_generator_sequence(gens):
                continue
        span = brute_p_span(gens, 1)
        as_vec = {k: tuple(Polynomial._raw(c, ctx) for c in k) for k in span}
        for _ in range(20):
            a, b = rng.choice(list(as_vec.values())), rng.choice(list(as_vec.values()))
            s = tuple(x + y for x, y in zip(a, b))
            assert p_span_membership(s, gens, 3).member
            c = rng.randrange(ctx.modulus)
            assert p_span_membership(tuple(x * c for x in a), gens, 3).member


def test_p_basis_counts_constant_vectors():
    for ctx in [RingContext(2, 2), RingContext(3, 2), RingContext(2, 3)]:
        rng = random.Random(ctx.modulus)
        for _ in range(15):
            n = rng.randint(1, 3 if ctx.modulus <= 4 else 2)
            G = random_generator(ctx, rng, n, rng.randint(1, 3), 0)
            enc = p_encoder(ConvolutionalCode(G))
            rows = list(enc.rows)
            assert is_p_generator_sequence(rows)
            assert is_p_linearly_independent(rows, 0)
            if rows:
                assert len(brute_p_span(rows, 0)) == ctx.p ** len(rows)


def test_p_bases_from_reordered_generators_have_equal_length():
    for ctx in [RingContext(2, 2), RingContext(2, 3), RingContext(3, 2)]:
        rng = random.Random(ctx.modulus + 5)
        for _ in range(20):
            G = random_generator(ctx, rng, rng.randint(1, 3), rng.randint(2, 3), 1)
            rows = list(G.entries)
            rng.shuffle(rows)
            H = type(G)._raw(rows, ctx)
            a, b = p_encoder(ConvolutionalCode(G)), p_encoder(ConvolutionalCode(H))
            assert a.p_dim == b.p_dim
