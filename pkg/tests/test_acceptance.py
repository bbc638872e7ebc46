"""Acceptance gate: one test per release criterion.

Each test below is a single pass/fail line for one criterion; run with
``pytest tests/test_acceptance.py -v`` to see the per-criterion verdicts.
All integer checks are exact; floating-point tolerances are pinned in the
constants at the top of this module.
"""

import math
import random
import time

import pytest

from shiftlab.block_codes import (
    BlockMap,
    higher_block_code,
    verify_lag_conjugacy,
)
from shiftlab.ck_invariants import (
    compare,
    e_invariant,
    invariant_report,
    se_witness_action,
    sse_witness_action,
    unit_invariant,
)
from shiftlab.fgab import (
    Equivalence,
    FgAbGroup,
    PairInvariant,
    element_equal,
    induced_hom,
    oracle_aut_orbit,
    pair_equiv,
    tensor,
)
from shiftlab.intlinalg import IntMatrix
from shiftlab.shift_spaces import (
    analyze,
    edge_graph,
    periodic_count,
    random_sse_chain,
)
from shiftlab.spectral import (
    NotAperiodicError,
    entropy,
    kms_temperature,
    kms_verify,
    parry_cylinder,
    parry_consistency,
    perron,
)
from tests.test_fgab import brute_force_tensor_factors

# pinned tolerances
TOL_PERRON = 1e-10
TOL_KMS = 1e-9
TOL_ENTROPY = 1e-10
TOL_CYLINDER = 1e-12
TOL_PARRY = 1e-9
TIME_EXAMPLE = 1.0  # seconds, criteria 1 and 2
TIME_SUITE = 60.0  # seconds, criterion 3

GOLDEN = IntMatrix.from_rows([[1, 1], [1, 0]])
FULL2 = IntMatrix.from_rows([[1, 1], [1, 1]])
ONES3 = IntMatrix.from_rows([[1, 1, 1]] * 3)
A41 = IntMatrix.from_rows([[4, 1], [1, 0]])
B3 = IntMatrix.from_rows([[1, 1, 1], [1, 1, 0], [1, 1, 0]])


def _random_essential(rng, max_n, max_entry):
    while True:
        n = rng.randint(1, max_n)
        a = IntMatrix.from_rows(
            [[rng.randint(0, max_entry) for _ in range(n)] for _ in range(n)])
        if analyze(a).essential:
            return a


def test_criterion_1_distinguished_pair_example():
    start = time.perf_counter()
    ra, rb = invariant_report(ONES3), invariant_report(B3)
    assert ra.bf_group.invariant_factors == (2,)
    assert rb.bf_group.invariant_factors == (2,)
    assert ra.det_id_minus_a == -2 and rb.det_id_minus_a == -2
    assert ra.e_pair.label() == "(Z/2, order-2 element)"
    assert rb.e_pair.label() == "(Z/2, order-1 element)"
    rep = compare(ONES3, B3)
    assert rep.verdict == "distinguished"
    assert rep.e_pair.verdict is Equivalence.INEQUIVALENT
    assert time.perf_counter() - start < TIME_EXAMPLE


def test_criterion_2_order_two_unit_example():
    start = time.perf_counter()
    e = e_invariant(A41)
    u = unit_invariant(A41)
    assert e.group.invariant_factors == (4,) and e.group.free_rank == 0
    assert e.summary.element_order == 2
    assert u.group.invariant_factors == (4,) and u.group.free_rank == 0
    assert u.summary.element_order == 1
    assert pair_equiv(e, u).verdict is Equivalence.INEQUIVALENT
    assert time.perf_counter() - start < TIME_EXAMPLE


def test_criterion_3_sse_step_property_suite():
    start = time.perf_counter()
    rng = random.Random(2024)
    done = 0
    while done < 200:
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        c = IntMatrix.from_rows(
            [[rng.randint(0, 3) for _ in range(m)] for _ in range(n)])
        d = IntMatrix.from_rows(
            [[rng.randint(0, 3) for _ in range(n)] for _ in range(m)])
        if not analyze(c @ d).essential:
            continue
        rec = sse_witness_action(c, d)
        assert rec.identity_holds
        assert rec.component_maps_iso and rec.tensor_map_iso
        assert rec.maps_e_to_e
        done += 1
    assert time.perf_counter() - start < TIME_SUITE


def test_criterion_4_shift_equivalence_witnesses():
    # every generated SSE step, reinterpreted as a shift equivalence at lag 1
    for seed, base in enumerate((GOLDEN, FULL2, ONES3, A41)):
        chain = random_sse_chain(base, steps=4, seed=seed)
        for (a, b), (r, s) in zip(
                zip(chain.matrices, chain.matrices[1:]), chain.steps):
            rec = se_witness_action(r, s, 1, a, b)
            assert rec.passed
    # the lag-2 self equivalence A = B, R = S = A
    for a in (GOLDEN, FULL2, ONES3, A41):
        rec = se_witness_action(a, a, 2, a, a)
        assert rec.passed


def test_criterion_5_edge_graph_invariance():
    rng = random.Random(59)
    for _ in range(100):
        a = _random_essential(rng, 4, 3)
        ag, r, s = edge_graph(a)
        assert r @ s == a and s @ r == ag
        rec = sse_witness_action(r, s)
        assert rec.passed  # explicit witness carrying e_A to e_{A_G}
        verdict = pair_equiv(e_invariant(a), e_invariant(ag))
        assert verdict.verdict is not Equivalence.INEQUIVALENT
        # the unit class is preserved: m_{S^t}([1_{N_A}]) = [1_N]
        gat = FgAbGroup.from_cokernel(IntMatrix.identity(a.rows) - a.transpose())
        gagt = FgAbGroup.from_cokernel(
            IntMatrix.identity(ag.rows) - ag.transpose())
        m_st = induced_hom(s.transpose(), gagt, gat)
        one_edges = gagt.element((1,) * ag.rows)
        one_states = gat.element((1,) * a.rows)
        assert element_equal(m_st.apply(one_edges), one_states)


def _random_finite_group(rng, max_order):
    while True:
        factors = []
        for _ in range(rng.randint(1, 3)):
            d = factors[-1] * rng.randint(1, 4) if factors else rng.randint(2, 8)
            factors.append(d)
        factors = [d for d in factors if d > 1]
        order = math.prod(factors) if factors else 1
        if factors and order <= max_order:
            return FgAbGroup.of_invariant_factors(tuple(factors))


def test_criterion_6_oracle_equivalence():
    rng = random.Random(66)
    # tensor product vs the brute-force cyclic-decomposition tensor
    for _ in range(100):
        g = _random_finite_group(rng, 64)
        h = _random_finite_group(rng, 64)
        t, _ = tensor(g, h)
        expected = brute_force_tensor_factors(
            g.invariant_factors, g.free_rank, h.invariant_factors, h.free_rank)
        assert (t.invariant_factors, t.free_rank) == expected
    # pair_equiv vs brute-force Aut-orbit membership
    for _ in range(100):
        g = _random_finite_group(rng, 256)
        rank = len(g.invariant_factors)
        x = g.element(tuple(rng.randrange(d) for d in g.invariant_factors))
        y = g.element(tuple(rng.randrange(d) for d in g.invariant_factors))
        verdict = pair_equiv(PairInvariant.of(g, x), PairInvariant.of(g, y))
        in_orbit = tuple(y.canonical()[0]) in oracle_aut_orbit(g, x)
        assert verdict.verdict is not Equivalence.INDETERMINATE
        assert bool(verdict) == in_orbit


def test_criterion_7_spectral_numerics():
    assert abs(perron(ONES3).beta - 3.0) < TOL_PERRON
    for a in (ONES3, GOLDEN):
        rep = kms_verify(a, n_max=8, tol=TOL_KMS)
        assert rep.passed and rep.normalization_error < TOL_KMS
    assert abs(entropy(GOLDEN) - math.log((1 + math.sqrt(5)) / 2)) < TOL_ENTROPY
    pd = perron(FULL2)
    for length in range(1, 11):
        for w in _all_words(2, length):
            cyl = parry_cylinder(FULL2, w, pd)
            assert abs(cyl.value - 0.5 ** length) < TOL_CYLINDER
    rng = random.Random(77)
    done = 0
    while done < 200:
        n = rng.randint(1, 8)
        a = IntMatrix.from_rows(
            [[rng.randint(0, 2) for _ in range(n)] for _ in range(n)])
        spec = analyze(a)
        if not (spec.essential and spec.irreducible and spec.period == 1):
            continue
        length = 5 if n <= 4 else 3
        assert parry_consistency(a, length, tol=TOL_PARRY).passed
        done += 1
    with pytest.raises(NotAperiodicError):
        kms_temperature(IntMatrix.from_rows([[0, 1], [1, 0]]))
    with pytest.raises(NotAperiodicError):
        kms_temperature(IntMatrix.identity(3))


def _all_words(n_symbols, length):
    import itertools
    return [tuple(w) for w in
            itertools.product(range(1, n_symbols + 1), repeat=length)]


def test_criterion_8_block_code_corpus():
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
    # golden mean <-> its edge graph via 2-block / 1-block recoding
    a2, phi, psi = higher_block_code(GOLDEN, 2)
    ag, _, _ = edge_graph(GOLDEN)
    assert a2 == ag
    assert verify_lag_conjugacy(phi, psi, 0, 6)
    # the shift map itself is a lag-1 self conjugacy
    sh = BlockMap.shift(GOLDEN)
    assert verify_lag_conjugacy(sh, sh, 1, 6)
    # periodic counts agree across every verified recoding and SSE chain
    for a in (GOLDEN, FULL2, ONES3):
        for k in (2, 3):
            ak, phi, psi = higher_block_code(a, k)
            assert verify_lag_conjugacy(phi, psi, 0, 6)
            for n in range(1, 9):
                assert periodic_count(a, n) == periodic_count(ak, n)
        chain = random_sse_chain(a, steps=5, seed=8)
        for b in chain.matrices:
            for n in range(1, 9):
                assert periodic_count(a, n) == periodic_count(b, n)
