import random

import pytest

from shiftlab.intlinalg import IntMatrix
from shiftlab.shift_spaces import (
    InvalidPartitionError,
    NotEssentialError,
    SseChain,
    analyze,
    edge_graph,
    in_split,
    is_admissible,
    out_split,
    periodic_count,
    random_sse_chain,
    verify_se,
    verify_sse_chain,
    verify_sse_step,
    words,
)

ONES3 = IntMatrix.from_rows([[1, 1, 1]] * 3)
GOLDEN = IntMatrix.from_rows([[1, 1], [1, 0]])
FULL2 = IntMatrix.from_rows([[1, 1], [1, 1]])
SWAP = IntMatrix.from_rows([[0, 1], [1, 0]])


def test_analyze_examples():
    spec = analyze(ONES3)
    assert spec.irreducible and spec.aperiodic and spec.n0 == 1
    spec = analyze(GOLDEN)
    assert spec.aperiodic and spec.n0 == 2
    spec = analyze(SWAP)
    assert spec.irreducible and spec.period == 2 and spec.is_permutation


def test_analyze_n0_minimal():
    rng = random.Random(8)
    for _ in range(40):
        n = rng.randint(1, 4)
        a = IntMatrix.from_rows(
            [[rng.randint(0, 2) for _ in range(n)] for _ in range(n)])
        spec = analyze(a)
        if spec.n0 is not None and spec.n0 > 1:
            prev = a.pow(spec.n0 - 1)
            assert any(prev[i, j] == 0 for i in range(n) for j in range(n))
            cur = a.pow(spec.n0)
            assert all(cur[i, j] >= 1 for i in range(n) for j in range(n))


def test_words_examples():
    assert [str(w) for w in words(GOLDEN, 2)] == ["11", "12", "21"]
    assert len(words(FULL2, 5)) == 32
    assert len(words(ONES3, 1)) == 3


def test_words_count_formula():
    rng = random.Random(4)
    for _ in range(30):
        n = rng.randint(1, 4)
        a = IntMatrix.from_rows(
            [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)])
        for length in (2, 3, 4):
            p = a.pow(length - 1)
            total = sum(p[i, j] for i in range(n) for j in range(n))
            assert len(words(a, length)) == total


def test_words_rejects_integral_matrix():
    with pytest.raises(ValueError):
        words(IntMatrix.from_rows([[2]]), 2)


def test_edge_graph_examples():
    ag, r, s = edge_graph(IntMatrix.from_rows([[2]]))
    assert ag == IntMatrix.from_rows([[1, 1], [1, 1]])
    ag, r, s = edge_graph(GOLDEN)
    assert ag == IntMatrix.from_rows([[1, 1, 0], [0, 0, 1], [1, 1, 0]])
    assert r @ s == GOLDEN and s @ r == ag


def test_edge_graph_properties():
    rng = random.Random(2024)
    done = 0
    while done < 40:
        n = rng.randint(1, 4)
        a = IntMatrix.from_rows(
            [[rng.randint(0, 3) for _ in range(n)] for _ in range(n)])
        if not analyze(a).essential:
            continue
        ag, r, s = edge_graph(a)
        assert r @ s == a and s @ r == ag
        assert ag.is_zero_one
        assert analyze(ag).essential
        assert ag.rows == sum(a[i, j] for i in range(n) for j in range(n))
        done += 1


def test_edge_graph_requires_essential():
    with pytest.raises(NotEssentialError):
        edge_graph(IntMatrix.from_rows([[1, 1], [0, 0]]))


def test_verify_sse_step():
    assert verify_sse_step(ONES3, ONES3, ONES3, IntMatrix.identity(3))
    ag, r, s = edge_graph(GOLDEN)
    assert verify_sse_step(GOLDEN, ag, r, s)
    rows = [list(x) for x in r.to_rows()]
    rows[0][0] += 1
    assert not verify_sse_step(GOLDEN, ag, IntMatrix.from_rows(rows), s)


def test_verify_se_examples():
    assert verify_se(ONES3, ONES3, ONES3, ONES3, 2)
    ag, r, s = edge_graph(GOLDEN)
    assert verify_se(GOLDEN, ag, r, s, 1)
    assert not verify_se(GOLDEN, ag, r, s, 2)


def test_se_matches_sse_at_lag_one():
    rng = random.Random(31)
    for _ in range(30):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        r = IntMatrix.from_rows(
            [[rng.randint(0, 2) for _ in range(m)] for _ in range(n)])
        s = IntMatrix.from_rows(
            [[rng.randint(0, 2) for _ in range(n)] for _ in range(m)])
        a, b = r @ s, s @ r
        assert verify_se(a, b, r, s, 1) == verify_sse_step(a, b, r, s)


def test_out_split_trivial_partition():
    parts = [[{j: GOLDEN[i, j] for j in range(2) if GOLDEN[i, j]}]
             for i in range(2)]
    b, r, s = out_split(GOLDEN, parts)
    assert b == GOLDEN
    assert verify_sse_step(GOLDEN, b, r, s)


def test_out_split_full_shift():
    # split state 1's two out-edges into singletons
    parts = [[{0: 1}, {1: 1}], [{0: 1, 1: 1}]]
    b, r, s = out_split(FULL2, parts)
    assert b.rows == 3
    assert verify_sse_step(FULL2, b, r, s)


def test_out_split_golden_mean():
    parts = [[{0: 1}, {1: 1}], [{0: 1}]]
    b, r, s = out_split(GOLDEN, parts)
    assert b.rows == 3
    assert verify_sse_step(GOLDEN, b, r, s)


def test_in_split():
    parts = [[{0: 1}, {1: 1}], [{0: 1}]]
    b, r, s = in_split(GOLDEN, parts)
    assert verify_sse_step(GOLDEN, b, r, s)


def test_split_invalid_partition():
    with pytest.raises(InvalidPartitionError):
        out_split(GOLDEN, [[{0: 1}], [{0: 1}]])  # misses edge 1->2


def test_random_sse_chain():
    chain = random_sse_chain(GOLDEN, 0, 1)
    assert len(chain.matrices) == 1
    for seed in range(8):
        chain = random_sse_chain(GOLDEN, 3, seed)
        assert chain.verify()
        again = random_sse_chain(GOLDEN, 3, seed)
        assert chain.matrices == again.matrices and chain.steps == again.steps


def test_chain_periodic_counts_agree():
    for seed in (3, 14, 15):
        chain = random_sse_chain(FULL2, 3, seed)
        a, b = chain.matrices[0], chain.matrices[-1]
        for n in range(1, 9):
            assert periodic_count(a, n) == periodic_count(b, n)


def test_periodic_counts():
    assert periodic_count(FULL2, 3) == 8
    assert [periodic_count(GOLDEN, n) for n in (1, 2, 3)] == [1, 3, 4]


def test_verify_sse_chain_roundtrip():
    chain = random_sse_chain(GOLDEN, 2, 5)
    assert verify_sse_chain(chain)
    # perturbing one step matrix breaks verification
    r, s = chain.steps[0]
    rows = [list(x) for x in r.to_rows()]
    rows[0][0] += 1
    bad = SseChain(chain.matrices,
                   ((IntMatrix.from_rows(rows), s),) + chain.steps[1:])
    assert not verify_sse_chain(bad)


def test_is_admissible():
    assert is_admissible(GOLDEN, (1, 1, 2, 1))
    assert not is_admissible(GOLDEN, (2, 2))
