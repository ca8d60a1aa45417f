import random

import pytest
from hypothesis import given, settings, strategies as st

from crossint.constructions import named
from crossint.covers import NoCoverExists, is_t_cover, min_covers, tau_t
from crossint.partitions import Family, Partition, enumerate_partitions, singletons

from oracles import as_sets, partial_partitions, tau


def random_family(rng, n, k, size):
    members = list(enumerate_partitions(n, k))
    return Family(n, k, rng.sample(members, min(size, len(members))))


def test_D_example():
    D = named("D", 6, 3, 1)
    res = tau_t(D, 1, collect_witnesses=True)
    assert res.tau == 2
    assert singletons(2, 6) in res.witnesses
    assert not is_t_cover(Partition.from_blocks(6, [[1]]), D, 1)
    assert all(is_t_cover(T, D, 1) for T in res.witnesses)


def test_trivial_family():
    fam = Family(6, 3, [p for p in enumerate_partitions(6, 3) if (1 << 0) in p.blocks])
    res = tau_t(fam, 1, collect_witnesses=True)
    assert res.tau == 1
    assert res.witnesses == [singletons(1, 6)]
    assert min_covers(fam, 1, 1) == [singletons(1, 6)]


def test_singleton_family():
    p = next(enumerate_partitions(6, 3))
    assert tau_t(Family(6, 3, [p]), 2).tau == 2


def test_min_covers_examples():
    C = named("C", 6, 3, 1)
    assert singletons(2, 6) in min_covers(C, 1, 2)
    assert min_covers(C, 2, 1) == []
    for T in min_covers(C, 1, 2):
        assert len(T) == 2 and is_t_cover(T, C, 1)


def test_members_cover_an_intersecting_family():
    fam = named("C", 7, 4, 2)
    for p in fam:
        assert is_t_cover(p, fam, 2)


def test_errors():
    with pytest.raises(ValueError):
        tau_t(Family(5, 3), 1)
    with pytest.raises(ValueError):
        is_t_cover(singletons(1, 5), Family(5, 3), 1)
    with pytest.raises(ValueError):
        is_t_cover(singletons(1, 4), named("C", 5, 3, 1), 1)
    a = Partition.from_blocks(3, [[1, 2], [3]])
    b = Partition.from_blocks(3, [[1], [2, 3]])
    with pytest.raises(NoCoverExists):
        tau_t(Family(3, 2, [a, b]), 2)


def test_partial_partition_members():
    fam = [Partition.from_blocks(6, [[1], [2]]), Partition.from_blocks(6, [[1], [3, 4]])]
    assert tau_t(fam, 1).tau == 1
    assert tau_t(fam, 2).tau == 3
    with pytest.raises(ValueError):
        tau_t([singletons(1, 5), singletons(1, 6)], 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 5), st.integers(2, 3), st.integers(1, 2), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_tau_matches_oracle(n, k, t, size, seed):
    if k > n:
        return
    fam = random_family(random.Random(seed), n, k, size)
    sets = as_sets(fam)
    try:
        expect = tau(sets, n, t)
    except ValueError:
        with pytest.raises(NoCoverExists):
            tau_t(fam, t)
        return
    res = tau_t(fam, t, collect_witnesses=True)
    assert res.tau == expect
    brute = {T for T in partial_partitions(n, expect) if all(len(T & p) >= t for p in sets)}
    # witnesses are the minimum covers drawn from member blocks
    used = {b for p in sets for b in p}
    assert set(as_sets(res.witnesses)) == {T for T in brute if T <= used}


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_removing_members_never_raises_tau(seed):
    rng = random.Random(seed)
    fam = named("D", 6, 3, 1)
    sub = Family(6, 3, rng.sample(list(fam), rng.randint(1, len(fam))))
    assert tau_t(sub, 1).tau <= tau_t(fam, 1).tau
    assert 1 <= tau_t(sub, 1).tau <= 3
