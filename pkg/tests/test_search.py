import json

import pytest

from crossint.duality import DualContext, is_maximal_pair
from crossint.partitions import common_blocks
from crossint.search import build_schedule, exhaustive_search, seeded_search, seeded_tuple_search
from crossint.tuples import is_nontrivial, is_tuple_maximal, tuple_product


def test_exhaustive_small():
    res = exhaustive_search(DualContext(6, 3, 2, 1))
    assert res.best_product == 15
    assert res.exhaustive and res.certificate["complete"]
    F, G = res.witness_families
    assert is_maximal_pair(F, G, 1)


def test_exhaustive_budget_gives_partial_certificate():
    res = exhaustive_search(DualContext(5, 3, 3, 1), budget=20)
    assert not res.exhaustive
    assert res.certificate["evaluations"] == 20
    assert res.to_dict()["exhaustive"] is False


def test_exhaustive_nontrivial():
    ctx = DualContext(5, 3, 3, 1)
    res = exhaustive_search(ctx, nontrivial=True)
    F, G = res.witness_families
    assert len(common_blocks([F, G])) < 1
    assert res.best_product < exhaustive_search(ctx).best_product


def test_schedule_is_seed_determined():
    ctx = DualContext(6, 3, 3, 1)
    a, _ = build_schedule(ctx, 2, 7, 50, 10**6)
    b, _ = build_schedule(ctx, 2, 7, 50, 10**6)
    c, _ = build_schedule(ctx, 2, 8, 50, 10**6)
    assert a == b and a != c


def test_seeded_is_deterministic_and_bounded():
    ctx = DualContext(5, 3, 3, 1)
    r1 = seeded_search(ctx, gen_max=2, seed=3, n_random=200)
    r2 = seeded_search(ctx, gen_max=2, seed=3, n_random=200)
    assert r1.to_json() == r2.to_json()
    assert not r1.exhaustive
    assert r1.best_product <= exhaustive_search(ctx).best_product
    F, G = r1.witness_families
    assert is_maximal_pair(F, G, 1)


def test_seeded_worker_count_does_not_change_result():
    ctx = DualContext(6, 3, 3, 1)
    one = seeded_search(ctx, gen_max=2, seed=5, n_random=300, workers=1)
    two = seeded_search(ctx, gen_max=2, seed=5, n_random=300, workers=2)
    assert one.to_json() == two.to_json()


def test_seeded_nontrivial_witness():
    ctx = DualContext(6, 3, 3, 1)
    res = seeded_search(ctx, gen_max=2, nontrivial=True, seed=1, n_random=100)
    F, G = res.witness_families
    assert len(common_blocks([F, G])) < 1


def test_checkpoint_resume(tmp_path):
    ctx = DualContext(6, 3, 2, 1)
    path = str(tmp_path / "ck.json")
    plain = seeded_search(ctx, gen_max=2, seed=2, n_random=1500)
    first = seeded_search(ctx, gen_max=2, seed=2, n_random=1500, checkpoint=path)
    data = json.loads(open(path).read())
    assert data["best_product"] == str(plain.best_product)
    resumed = seeded_search(ctx, gen_max=2, seed=2, n_random=1500, checkpoint=path)
    assert plain.to_json() == first.to_json() == resumed.to_json()
    with pytest.raises(ValueError):
        seeded_search(ctx, gen_max=2, seed=3, n_random=1500, checkpoint=path)


def test_tuple_search():
    res = seeded_tuple_search(6, [3, 3, 3], 1, nontrivial=True, seed=0, n_random=60, gen_max=2)
    again = seeded_tuple_search(6, [3, 3, 3], 1, nontrivial=True, seed=0, n_random=60, gen_max=2, workers=2)
    assert res.to_json() == again.to_json()
    fams = res.witness_families
    assert res.best_product == tuple_product(fams)
    assert is_tuple_maximal(fams, 1) and is_nontrivial(fams, 1)


def test_checkpoint_resumes_after_interruption(tmp_path, monkeypatch):
    import crossint.search as search

    ctx = DualContext(6, 3, 2, 1)
    path = str(tmp_path / "ck.json")
    plain = seeded_search(ctx, gen_max=2, seed=4, n_random=1500)
    real = search.pmap
    calls = []

    def flaky(fn, items, workers=None):
        calls.append(1)
        if len(calls) == 2:
            raise KeyboardInterrupt
        return real(fn, items, workers)

    monkeypatch.setattr(search, "pmap", flaky)
    with pytest.raises(KeyboardInterrupt):
        seeded_search(ctx, gen_max=2, seed=4, n_random=1500, checkpoint=path)
    saved = json.loads(open(path).read())
    assert 0 < saved["position"] < plain.certificate["evaluated"]
    monkeypatch.setattr(search, "pmap", real)
    resumed = seeded_search(ctx, gen_max=2, seed=4, n_random=1500, checkpoint=path)
    assert resumed.to_json() == plain.to_json()
