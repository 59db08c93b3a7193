import random

import pytest

from zprconv.code import ConvolutionalCode
from zprconv.corpus import random_block_code
from zprconv.dual import dual
from zprconv.errors import DimensionMismatch, TooLarge
from zprconv.matrix import PolyMatrix
from zprconv.oracle import (
    ORACLE_CAP,
    CodewordSet,
    block_code_checks,
    brute_dual_block,
    brute_p_span,
    constant_part,
    enumerate_block_code,
    fits_oracle,
    orthogonality_check,
)
from zprconv.poly import Polynomial
from zprconv.ring import RingContext


def const(rows, ctx):
    return PolyMatrix.from_constant(rows, ctx)


def test_enumerate_examples(Z4):
    assert len(enumerate_block_code(const([[1, 2], [0, 2]], Z4))) == 8
    assert len(enumerate_block_code(PolyMatrix.identity(2, Z4))) == 16
    assert set(enumerate_block_code(const([[2, 0]], Z4))) == {(0, 0), (2, 0)}


def test_enumerate_rejects_large_ambient():
    ctx = RingContext(2, 4)
    assert not fits_oracle(ctx, 5)
    with pytest.raises(TooLarge):
        enumerate_block_code(PolyMatrix.identity(5, ctx))
    with pytest.raises(TooLarge):
        brute_dual_block(PolyMatrix.identity(5, ctx))


def test_brute_dual_examples(Z4):
    D = brute_dual_block(const([[1, 2], [0, 2]], Z4))
    assert set(D) == {(0, 0), (0, 2)}
    assert len(D) * 8 == 16
    assert set(brute_dual_block(const([[2]], Z4))) == {(0,), (2,)}
    assert set(brute_dual_block([], Z4, 1)) == {(0,), (1,), (2,), (3,)}


def test_orthogonality_examples(Z4):
    G = PolyMatrix.from_coeffs([[[1, 1], [0, 1]]], Z4)
    H = PolyMatrix.from_coeffs([[[0, 3], [1, 1]]], Z4)
    assert orthogonality_check(G, H)
    assert orthogonality_check(PolyMatrix.identity(2, Z4), PolyMatrix.zeros(1, 2, Z4))
    assert not orthogonality_check(const([[1, 1]], Z4), const([[1, 1]], Z4))
    with pytest.raises(DimensionMismatch):
        orthogonality_check(PolyMatrix.identity(2, Z4), PolyMatrix.identity(3, Z4))


def _tuples(vectors):
    return {tuple(tuple(c) for c in v) for v in vectors}


def test_brute_p_span_examples(Z4):
    one = [Polynomial([1], Z4)] * 2
    two = [Polynomial([2], Z4)] * 2
    assert brute_p_span([one], 0) == {((), ()), ((1,), (1,))}
    assert brute_p_span([one, two], 0) == {((), ()), ((1,), (1,)), ((2,), (2,)), ((3,), (3,))}
    assert brute_p_span([], 0, Z4, 2) == {((), ())}


def test_brute_p_span_cap(Z4):
    gens = [[Polynomial([1], Z4)]] * 4
    with pytest.raises(TooLarge):
        brute_p_span(gens, 4)
    assert 2 ** (5 * 4) > ORACLE_CAP


def test_codeword_set_closure(Z4):
    S = CodewordSet([(0, 0), (2, 2)], Z4, 2)
    assert len(S) == 2 and (2, 2) in S
    with pytest.raises(ValueError):
        CodewordSet([(0, 0), (1, 1)], Z4, 2)
    with pytest.raises(ValueError):
        CodewordSet([(1,)], Z4, 1)
    with pytest.raises(DimensionMismatch):
        CodewordSet([(0,)], Z4, 2)


def test_constant_part_of_convolutional_code(Z4):
    # Im[1+D, D] holds no nonzero constant vector, Im[1+D, 1+D] holds (a, a)
    C = ConvolutionalCode.from_coeffs([[[1, 1], [0, 1]]], Z4)
    assert set(constant_part(C)) == {(0, 0)}
    C = ConvolutionalCode.from_coeffs([[[1, 1], [1, 1]]], Z4)
    assert set(constant_part(C)) == {(a, a) for a in range(4)}


@pytest.mark.parametrize("p,r", [(2, 2), (2, 3), (3, 2)])
def test_block_codes_against_engine(p, r):
    ctx = RingContext(p, r)
    rng = random.Random(300 + p + r)
    for _ in range(40):
        C = random_block_code(ctx, rng, max_n=3)
        if not fits_oracle(ctx, C.n):
            continue
        report = block_code_checks(C)
        assert report.passed, report.render()
        words = enumerate_block_code(C.generator)
        assert all(tuple(w) in words for w in C.generator.constant_rows())
        assert constant_part(dual(C).dual_code) == brute_dual_block(C.generator)
