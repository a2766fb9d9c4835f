import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threepoint.bijections import (
    BijectionError,
    PointedQuadrangulation,
    delays_for_triple,
    encode_triple,
    label_vertices,
    labeled_canonical_form,
    miermont_forward,
    miermont_inverse,
    quad_canonical_form,
    verify_constraints,
)
from threepoint.gf import DistanceTriple
from threepoint.maps import LabeledMap, bfs_distances, is_quadrangulation, path_map
from threepoint.oracle import random_labeled_tree
from threepoint.verify import bijection_suite


def test_labels_are_distances_for_one_source():
    pq = PointedQuadrangulation(path_map(2), (0,), (0,))
    assert label_vertices(pq) == [0, 1, 2]


def test_forward_and_inverse_on_path():
    pq = PointedQuadrangulation(path_map(2), (0,), (0,))
    lm = miermont_forward(pq)
    assert lm.map.n_edges == 1 and sorted(lm.labels) == [1, 2]
    back = miermont_inverse(lm)
    assert back.quad.n_vertices == 3 and back.delays == (0,)
    assert bfs_distances(back.quad, back.sources[0]).count(2) == 1
    assert quad_canonical_form(back) == quad_canonical_form(pq)


def test_invalid_delays_rejected():
    q = path_map(2)
    with pytest.raises(BijectionError):
        PointedQuadrangulation(q, (0, 2), (0, 2))  # gap equals distance
    with pytest.raises(BijectionError):
        PointedQuadrangulation(q, (0, 2), (0, 1))  # parity
    with pytest.raises(BijectionError):
        PointedQuadrangulation(q, (0, 0), (0, 0))
    with pytest.raises(BijectionError):
        PointedQuadrangulation(path_map(3), (0,), (0,))


def test_inverse_rejects_mismatched_delays():
    lm = miermont_forward(PointedQuadrangulation(path_map(2), (0,), (0,)))
    with pytest.raises(BijectionError):
        miermont_inverse(lm, (3,))


def test_delays_for_triple():
    assert delays_for_triple(DistanceTriple(2, 2, 2)) == (-1, -1, -1)
    assert delays_for_triple(DistanceTriple(3, 3, 2)) == (-1, -2, -1)
    with pytest.raises(BijectionError):
        delays_for_triple(DistanceTriple(2, 1, 1))


def test_unknown_constraint_mode():
    lm = miermont_forward(PointedQuadrangulation(path_map(2), (0,), (0,)))
    with pytest.raises(ValueError):
        verify_constraints(lm, "bogus", ())


def test_constraint_report_names_violation():
    lm = miermont_forward(PointedQuadrangulation(path_map(2), (0,), (0,)))
    rep = verify_constraints(lm, "face_minima", (1,))
    assert not rep.passed and "minimum" in rep.first_violation


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 25), st.integers(0, 2**32 - 1))
def test_tree_round_trip(n, seed):
    tree = random_labeled_tree(n, random.Random(seed))
    lm = tree.to_labeled_map()
    pq = miermont_inverse(lm)
    q, src = pq.quad, pq.sources[0]
    assert is_quadrangulation(q) and q.n_faces == n and q.n_vertices == n + 2
    # labels of the tree are distances from the source, shifted by the delay
    d = bfs_distances(q, src)
    lm2 = miermont_forward(pq)
    assert all(lm2.labels[i] == d[v] + pq.delays[0] for i, v in enumerate(lm2.origin))
    assert lm2.map.n_edges == n
    assert labeled_canonical_form(lm2) == labeled_canonical_form(lm)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 30), st.integers(0, 2**32 - 1))
def test_three_sources_recover_distances(n, seed):
    rng = random.Random(seed)
    q = miermont_inverse(random_labeled_tree(n, rng).to_labeled_map()).quad
    vs = rng.sample(range(q.n_vertices), 3)
    d1, d2 = bfs_distances(q, vs[0]), bfs_distances(q, vs[1])
    trip = DistanceTriple(d1[vs[1]], d2[vs[2]], d1[vs[2]])
    lm = encode_triple(q, vs)
    if trip.aligned:
        assert lm.marked_vertex is not None and len(lm.face_order) == 2
        assert verify_constraints(lm, "two", [x for x in trip.stu if x]).passed
        return
    rep = verify_constraints(lm, "three", trip.stu)
    assert rep.passed, rep.first_violation
    assert rep.backbone_type in ("a", "b", "c", "d")
    pq = miermont_inverse(lm)
    a, b, c = pq.sources
    da, db = bfs_distances(pq.quad, a), bfs_distances(pq.quad, b)
    assert (da[b], db[c], da[c]) == tuple(trip)


def test_labeled_map_json_round_trip():
    lm = miermont_forward(PointedQuadrangulation(path_map(2), (0,), (0,)))
    again = LabeledMap.from_json(lm.to_json())
    assert labeled_canonical_form(again) == labeled_canonical_form(lm)


def test_bijection_suite_small():
    res = bijection_suite(200, 20, seed=3, triples=200)
    assert res.passed, res.counterexample
    assert set(res.details["backbones"]) <= set("abcd")
