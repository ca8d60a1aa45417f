import random

import pytest
from hypothesis import given, settings, strategies as st

from crossint.constructions import named
from crossint.covers import tau_t
from crossint.duality import (
    ClosureBudgetExceeded,
    DualContext,
    PairEnumeration,
    best_maximal_pairs,
    closure,
    dual,
    is_maximal_pair,
    iter_maximal_pairs,
)
from crossint.partitions import Family, common_blocks, enumerate_partitions, universe

import oracles
from oracles import as_sets

PARAMS = [(4, 2, 2, 1), (5, 3, 2, 1), (5, 3, 3, 1), (6, 3, 3, 1), (6, 4, 3, 2), (7, 4, 3, 1), (7, 3, 3, 2)]


def random_family(rng, n, k, most=6):
    members = list(enumerate_partitions(n, k))
    return Family(n, k, rng.sample(members, rng.randint(0, min(most, len(members)))))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PARAMS), st.integers(0, 2**32 - 1))
def test_dual_matches_oracle(params, seed):
    n, k, l, t = params
    F = random_family(random.Random(seed), n, k)
    assert set(as_sets(dual(F, l, t))) == oracles.dual(as_sets(F), n, l, t)


def test_dual_of_empty_is_universe():
    assert dual(Family(6, 3), 3, 1) == universe(6, 3).all()
    with pytest.raises(ValueError):
        dual(Family(6, 3), 3, 0)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PARAMS), st.integers(0, 2**32 - 1))
def test_galois_laws(params, seed):
    n, k, l, t = params
    rng = random.Random(seed)
    f2 = random_family(rng, n, k, most=8)
    f1 = Family(n, k, rng.sample(list(f2), rng.randint(0, len(f2))))
    d1, d2 = dual(f1, l, t), dual(f2, l, t)
    assert set(d2) <= set(d1)
    assert set(f2) <= set(dual(d2, k, t))
    assert dual(dual(d2, k, t), l, t) == d2
    assert closure(f2, l, t) == dual(d2, k, t)


@pytest.mark.parametrize("n,k,l,t", [(7, 3, 3, 1), (7, 4, 3, 1), (7, 4, 4, 2)])
def test_named_pairs_are_fixed_points(n, k, l, t):
    A, B = named("A", n, k, t, l=l), named("B", n, l, t)
    C, D = named("C", n, k, t), named("D", n, l, t)
    assert dual(A, l, t) == B and dual(B, k, t) == A
    assert dual(C, l, t) == D and dual(D, k, t) == C
    assert is_maximal_pair(A, B, t) and is_maximal_pair(C, D, t)


def test_non_maximal_pair_detected():
    C, D = named("C", 6, 3, 1), named("D", 6, 3, 1)
    sub = Family(6, 3, list(D)[:-1])
    assert not is_maximal_pair(C, sub, 1)


@pytest.mark.parametrize("n,k,l,t", [(4, 2, 2, 1), (4, 3, 2, 1), (5, 2, 2, 1)])
def test_next_closure_finds_every_closed_family(n, k, l, t):
    ctx = DualContext(n, k, l, t)
    got = [G for _, G in iter_maximal_pairs(ctx)]
    assert len(got) == len(set(got))
    # lectic order: the first differing member decides, the set holding it is later
    assert got == sorted(got, key=lambda b: [(b >> i) & 1 for i in range(ctx.U["l"].size)])
    N = ctx.U["k"].size
    # every closed G is the dual of some F
    expect = {ctx.dual_bits(bits, "k") for bits in range(1 << N)}
    assert set(got) == expect


@pytest.mark.parametrize("n,k,l,t", [(5, 3, 3, 1), (5, 2, 3, 1), (6, 3, 2, 1)])
def test_emitted_pairs_are_maximal(n, k, l, t):
    ctx = DualContext(n, k, l, t)
    cert = PairEnumeration(n, k, l, t, 10**6)
    for F, G in iter_maximal_pairs(ctx, certificate=cert):
        assert ctx.dual_bits(G, "l") == F and ctx.dual_bits(F, "k") == G
    assert cert.complete


def test_closure_budget_partial():
    ctx = DualContext(5, 3, 3, 1)
    with pytest.raises(ClosureBudgetExceeded) as err:
        list(iter_maximal_pairs(ctx, budget=50))
    part = err.value.partial
    assert not part.complete and part.evaluations == 50 and part.closed_count > 0


def test_best_pair_at_small_params():
    summ = best_maximal_pairs(DualContext(6, 3, 2, 1))
    assert summ.best_product == 15
    assert summ.certificate.complete
    for F, G in summ.witnesses:
        assert len(F) * len(G) == 15 and is_maximal_pair(F, G, 1)


LEMMA_TT = [(n, k, l, 1) for n in (5, 6) for k in (2, 3) for l in (2, 3)]


@pytest.mark.parametrize("n,k,l,t", LEMMA_TT)
def test_trivial_iff_covering_numbers_equal_t(n, k, l, t):
    ctx = DualContext(n, k, l, t)
    seen = 0
    for Fb, Gb in iter_maximal_pairs(ctx, budget=10**6):
        if not Fb or not Gb:
            continue
        F, G = ctx.family(Fb, "k"), ctx.family(Gb, "l")
        trivial = len(common_blocks([F, G])) >= t
        both_t = tau_t(F, t).tau == t and tau_t(G, t).tau == t
        assert trivial == both_t, (F, G)
        seen += 1
    assert seen
