import json

import pytest

from crossint.constructions import ConstructionSpec, build_family
from crossint.partitions import Partition, singletons
from crossint.theorems import THEOREMS, OutsideEnvelope, classify_t_plus_1, verify_theorem


def test_pair_bound_small_n():
    rep = verify_theorem("1.3", {"n": 8, "t": 1, "ks": [3, 3]}, n_random=50)
    assert rep.status == "pass"
    assert not rep.exhaustive
    assert rep.tier("T2").status == "pass"
    again = verify_theorem("1.3", {"n": 8, "t": 1, "ks": [3, 3]}, n_random=50)
    assert rep.to_json() == again.to_json()
    json.loads(rep.to_json())


def test_t_plus_1_exhaustive_classification():
    rep = verify_theorem("P2.8", {"n": 6, "t": 1, "ks": [3]})
    assert rep.status == "pass" and rep.exhaustive
    t3 = rep.tier("T3")
    assert t3.exhaustive
    assert t3.details["unclassified"] == []
    assert sum(t3.details["shapes"].values()) > 0


def test_equal_uniformity_reference_values():
    rep = verify_theorem("P3.5", {"n": 20, "t": 1, "ks": [3, 3]}, n_random=20)
    t1 = rep.tier("T1")
    assert t1.status == "pass"
    text = json.dumps(t1.details)
    assert "524288" in text and "524285" in text
    assert rep.tier("T2").status == "pass"
    assert rep.tier("T3").status == "exploratory"


def test_t_plus_1_tuple():
    rep = verify_theorem("P4.1", {"n": 7, "t": 1, "ks": [3, 3, 2]}, tuple_random=30)
    assert rep.status == "pass"


def test_nontrivial_tuple_structure():
    rep = verify_theorem("1.6", {"n": 17, "t": 1, "ks": [3, 3, 3]}, tuple_random=20)
    assert rep.tier("T1").status == "pass"
    assert rep.tier("T2").status == "pass" and rep.tier("T2").n == 7


def test_refusals():
    with pytest.raises(OutsideEnvelope):
        verify_theorem("1.5", {"n": 20, "t": 1, "ks": [3, 3]})
    with pytest.raises(OutsideEnvelope):
        verify_theorem("1.4", {"n": 20, "t": 1, "ks": [3, 3]})
    with pytest.raises((KeyError, ValueError)):
        verify_theorem("9.9", {"n": 8, "t": 1, "ks": [3, 3]})
    assert "1.3" in THEOREMS and len(THEOREMS) == 7


def test_classify_shapes():
    n, t = 6, 1
    G = Partition.from_blocks(n, [[1], [2, 3, 4, 5, 6]])
    Fi = build_family(ConstructionSpec("P28i", n, 3, t, G=G))
    Gi = build_family(ConstructionSpec("P28i", n, t + 1, t, G=G))
    assert classify_t_plus_1([Fi, Gi], t) == "i"
    M = Partition.from_blocks(n, [[1], [2], [3, 4, 5, 6]])
    Fii = build_family(ConstructionSpec("P28ii", n, 3, t, M=M))
    Gii = build_family(ConstructionSpec("P28ii", n, t + 1, t, M=M))
    assert classify_t_plus_1([Fii, Gii], t) == "ii"
    assert classify_t_plus_1([Fii, Fii], t) is None
    assert classify_t_plus_1([Fi, build_family(ConstructionSpec("P28ii", n, t + 1, t, M=singletons(3, n)))], t) is None
