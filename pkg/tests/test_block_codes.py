import random

import pytest

from shiftlab.block_codes import (
    AlphabetMismatch,
    BlockMap,
    PeriodicPoint,
    apply_periodic,
    apply_word,
    compose,
    higher_block_code,
    verify_lag_conjugacy,
)
from shiftlab.intlinalg import IntMatrix
from shiftlab.shift_spaces import Word, edge_graph, periodic_count, words

GOLDEN = IntMatrix.from_rows([[1, 1], [1, 0]])
FULL2 = IntMatrix.from_rows([[1, 1], [1, 1]])
ONES3 = IntMatrix.from_rows([[1, 1, 1]] * 3)


def test_apply_word_identity_and_shift():
    w = Word((1, 1, 2, 1))
    assert apply_word(BlockMap.identity(GOLDEN), w) == w
    assert apply_word(BlockMap.shift(GOLDEN), w) == Word((1, 2, 1))


def test_apply_word_xor_map():
    # 2-block map on the full 2-shift: symbols as bits 1->0, 2->1, XOR
    table = {(a, b): 1 + ((a - 1) ^ (b - 1)) for a in (1, 2) for b in (1, 2)}
    phi = BlockMap(0, 1, FULL2, FULL2, table)
    assert apply_word(phi, Word((1, 1, 2, 1))) == Word((1, 2, 2))


def test_apply_periodic():
    p = PeriodicPoint(Word((1, 1, 2)))
    assert apply_periodic(BlockMap.identity(GOLDEN), p) == p
    shifted = apply_periodic(BlockMap.shift(GOLDEN), p)
    assert shifted == p.rotate(1)


def test_apply_periodic_commutes_with_rotation():
    rng = random.Random(6)
    _, phi, _ = higher_block_code(GOLDEN, 2)
    cycles = [(1, 1, 2), (1, 2), (1,), (1, 1, 1, 2)]
    for cyc in cycles:
        p = PeriodicPoint(Word(cyc))
        for k in range(len(cyc)):
            a = apply_periodic(phi, p.rotate(k))
            b = apply_periodic(phi, p).rotate(k)
            assert a == b


def test_compose_matches_sequential_application():
    _, phi, psi = higher_block_code(GOLDEN, 2)
    comp = compose(phi, psi)
    for length in range(4, 13):
        for w in words(GOLDEN, length):
            expected = apply_word(psi, apply_word(phi, w))
            assert apply_word(comp, w) == expected


def test_compose_identity_and_shift():
    ident = BlockMap.identity(GOLDEN)
    sh = BlockMap.shift(GOLDEN)
    w = Word((1, 1, 2, 1, 1))
    assert apply_word(compose(ident, sh), w) == apply_word(sh, w)
    sigma2 = compose(sh, sh)
    assert apply_word(sigma2, w) == Word((2, 1, 1))


def test_compose_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        compose(BlockMap.identity(GOLDEN), BlockMap.identity(ONES3))


def test_verify_lag_identity_corpus():
    rng = random.Random(1234)
    corpus = [GOLDEN, FULL2, ONES3]
    while len(corpus) < 20:
        n = rng.randint(1, 4)
        a = IntMatrix.from_rows(
            [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)])
        if any(a[i, j] for i in range(n) for j in range(n)):
            corpus.append(a)
    for a in corpus:
        ident = BlockMap.identity(a)
        assert verify_lag_conjugacy(ident, ident, 0, 6)


def test_verify_lag_shift_as_code():
    sh = BlockMap.shift(GOLDEN)
    assert verify_lag_conjugacy(sh, sh, 1, 6)
    assert not verify_lag_conjugacy(sh, sh, 0, 6)


def test_golden_mean_edge_graph_recoding():
    a2, phi, psi = higher_block_code(GOLDEN, 2)
    ag, _, _ = edge_graph(GOLDEN)
    assert a2 == ag
    assert verify_lag_conjugacy(phi, psi, 0, 6)


def test_higher_block_examples():
    a1, phi, psi = higher_block_code(GOLDEN, 1)
    assert a1 == GOLDEN
    a3, phi, psi = higher_block_code(FULL2, 3)
    assert a3.rows == 8
    assert verify_lag_conjugacy(phi, psi, 0, 6)


def test_recodings_preserve_periodic_counts():
    for a in (GOLDEN, FULL2, ONES3):
        for k in (2, 3):
            ak, phi, psi = higher_block_code(a, k)
            for n in range(1, 7):
                assert periodic_count(a, n) == periodic_count(ak, n)
