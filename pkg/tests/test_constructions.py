import random

import pytest

from crossint.constructions import (
    ConstructionError,
    ConstructionSpec,
    build_family,
    closed_size,
    family_W,
    hm_bound,
    named,
    size_h,
    size_phi,
    size_r1,
    size_r2,
)
from crossint.covers import tau_t
from crossint.partitions import (
    Partition,
    common_blocks,
    enumerate_partitions,
    is_cross_t_intersecting,
    singletons,
    universe,
)
from crossint.stirling import stirling

GRID = [
    (n, k, l, t)
    for t in (1, 2)
    for l in range(t + 2, 6)
    for k in range(l, 6)
    for n in range(t + 3, 9)
    if n > k
]


@pytest.mark.parametrize("n,k,l,t", GRID)
def test_enumerated_sizes_match_closed_forms(n, k, l, t):
    assert len(named("A", n, k, t, l=l)) == closed_size("A", n, k, t, l=l)
    assert len(named("B", n, l, t)) == closed_size("B", n, l, t)
    assert len(named("C", n, k, t)) == closed_size("C", n, k, t)
    assert len(named("D", n, l, t)) == closed_size("D", n, l, t)
    assert len(named("HM1", n, k, t)) == hm_bound(n, k, t, "i")
    assert len(named("HM2", n, k, t)) == hm_bound(n, k, t, "ii")


@pytest.mark.parametrize("n,k,l,t", GRID)
def test_pairs_are_cross_intersecting_and_nontrivial(n, k, l, t):
    A, B = named("A", n, k, t, l=l), named("B", n, l, t)
    C, D = named("C", n, k, t), named("D", n, l, t)
    assert is_cross_t_intersecting([A, B], t)
    assert is_cross_t_intersecting([C, D], t)
    assert len(common_blocks([A, B])) < t
    assert len(common_blocks([C, D])) < t
    assert len(A) * len(B) == size_r1(n, k, l, t)
    assert len(C) * len(D) == size_r2(n, k, l, t)


def test_hm_branch_ii_equals_h():
    for n, k, t in [(7, 4, 1), (8, 5, 2), (9, 4, 1)]:
        assert hm_bound(n, k, t, "ii") == size_h(t + 2, k, t + 1, n)


def test_hm_branch_i_value():
    expect = 3 * stirling(8, 2) - 3 * stirling(7, 1) + 1 * stirling(6, 0) + 1
    assert hm_bound(10, 4, 1, "i") == expect


@pytest.mark.parametrize("n,k,t", [(6, 3, 1), (7, 4, 1), (7, 4, 2), (8, 3, 1), (8, 5, 2)])
def test_h_matches_enumeration(n, k, t):
    for m in range(t, min(k, n) + 1):
        S = singletons(m, n).blocks
        brute = sum(1 for p in enumerate_partitions(n, k) if len(S & p.blocks) >= t)
        assert size_h(m, k, t, n) == brute


def test_h_at_t_plus_one_is_D():
    for n, k, t in [(7, 4, 1), (8, 4, 2)]:
        assert size_h(t + 1, k, t, n) == closed_size("D", n, k, t)


def test_covering_numbers_of_C_and_D():
    for n, k, t in [(6, 3, 1), (7, 4, 1), (7, 4, 2)]:
        assert tau_t(named("C", n, k, t), t).tau == t
        assert tau_t(named("D", n, k, t), t).tau == t + 1


def test_predicate_mode_matches_enumeration():
    for kind in ("A", "B", "C", "D", "HM1", "HM2"):
        spec = ConstructionSpec(kind, 7, 4, 1, l=3 if kind == "A" else None)
        pred = build_family(spec, mode="predicate")
        fam = build_family(spec)
        assert {p for p in universe(7, 4).members if pred(p)} == set(fam)


def test_predicate_mode_beyond_budget():
    spec = ConstructionSpec("C", 20, 3, 1)
    pred = build_family(spec, mode="predicate")
    inside = Partition(20, [1, 2, ((1 << 20) - 1) & ~3])
    outside = Partition(20, [1, 6, ((1 << 20) - 1) & ~7])
    assert pred(inside) and not pred(outside)


def test_B_with_general_anchors():
    n, l, t = 8, 4, 1
    X = Partition.from_blocks(n, [[1, 2]])
    M = Partition.from_blocks(n, [[1, 2], [3], [4, 5], [6]])
    fam = build_family(ConstructionSpec("B", n, l, t, X=X, M=M))
    assert len(fam) == stirling(n - 2, l - t) + t


def test_bad_anchors_rejected():
    with pytest.raises(ConstructionError):
        ConstructionSpec("Z", 6, 3, 1)
    with pytest.raises(ConstructionError):
        build_family(ConstructionSpec("C", 6, 3, 1, T=singletons(3, 6)))
    with pytest.raises(ConstructionError):
        build_family(ConstructionSpec("A", 6, 3, 1, X=singletons(2, 6), M=singletons(3, 6)))
    with pytest.raises(ConstructionError):
        build_family(ConstructionSpec("B", 6, 3, 1, M=Partition.from_blocks(6, [[1], [2], [3, 4, 5, 6]])))
    with pytest.raises(ConstructionError):
        build_family(ConstructionSpec("P28ii", 6, 3, 1, M=Partition.from_blocks(6, [[1], [2, 3, 4, 5, 6]])))
    with pytest.raises(ValueError):
        build_family(ConstructionSpec("C", 6, 3, 1), mode="lazy")


def test_t_plus_1_shapes_are_cross_intersecting():
    n, t = 6, 1
    for kind in ("P28i", "P28ii"):
        small = build_family(ConstructionSpec(kind, n, t + 1, t))
        big = build_family(ConstructionSpec(kind, n, 3, t))
        assert small and big
        assert is_cross_t_intersecting([big, small], t)


def test_W_examples():
    n, k, t = 7, 3, 1
    G = Partition.from_blocks(n, [[1, 2], [3, 4], [5, 6, 7]])
    W = family_W(G, k, t, n)
    assert 10 * len(W) < 16 * stirling(n - t, k - t)
    H = singletons(t + 1, n)
    H = Partition(n, list(H.blocks) + [((1 << n) - 1) & ~((1 << (t + 1)) - 1)])
    assert len(family_W(H, k, t, n)) == size_h(t + 1, k, t, n)
    F = next(enumerate_partitions(6, 3))
    assert set(family_W(F, 3, 3, 6)) == {F}


def test_W_size_is_relabelling_invariant():
    rng = random.Random(3)
    n, k, t = 7, 3, 1
    G = Partition.from_blocks(n, [[1, 2], [3], [4, 5, 6, 7]])
    base = len(family_W(G, k, t, n))
    for _ in range(5):
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        assert len(family_W(G.relabel(perm), k, t, n)) == base


def test_phi_definition():
    ks, t, n = [4, 3, 3], 1, 7
    assert size_phi(2, 3, ks, t, n) == size_h(2, 3, 1, 7) * stirling(5, 2) * stirling(5, 1)
    with pytest.raises(ValueError):
        size_phi(2, 4, ks, t, n)
