from math import comb

import pytest

from threepoint.bijections import miermont_inverse
from threepoint.maps import (
    LabeledMap,
    MapError,
    PlanarMap,
    backbone,
    bfs_distances,
    bipartite_coloring,
    build_map,
    canonical_code,
    canonical_form,
    classify_backbone,
    is_quadrangulation,
    path_map,
    reconstruct,
    skeleton,
)
from threepoint.oracle import enum_well_labeled_trees


def theta() -> PlanarMap:
    return build_map([2, 5, 4, 1, 0, 3], [1, 0, 3, 2, 5, 4])


def figure_eight() -> PlanarMap:
    return build_map([1, 2, 3, 0], [1, 0, 3, 2])


def cycle_with_pendant() -> PlanarMap:
    # triangle A-B-C with a pendant edge A-D
    return build_map([6, 2, 1, 4, 3, 0, 5, 7], [1, 0, 3, 2, 5, 4, 7, 6])


def test_single_edge():
    m = build_map([0, 1], [1, 0])
    assert (m.n_vertices, m.n_edges, m.n_faces) == (2, 1, 1)


def test_path_is_quadrangulation():
    m = path_map(2)
    assert (m.n_vertices, m.n_edges, m.n_faces) == (3, 2, 1)
    assert m.face_degree(0) == 4
    assert is_quadrangulation(m)
    assert bfs_distances(m, 0) == [0, 1, 2]
    assert bipartite_coloring(m) is not None


def test_rejects_torus_and_bad_permutations():
    with pytest.raises(MapError, match="genus 1"):
        build_map([1, 2, 3, 0], [2, 3, 0, 1])
    with pytest.raises(MapError):
        build_map([0, 0], [1, 0])
    with pytest.raises(MapError):
        build_map([0, 1, 2], [1, 0, 2])
    with pytest.raises(MapError):
        build_map([0, 1, 2, 3], [1, 0, 3, 2])  # two components


def test_labels_must_be_lipschitz():
    with pytest.raises(MapError):
        LabeledMap(path_map(1), (0, 2))


def test_canonical_codes():
    m = path_map(2)
    codes = [canonical_code(m, h) for h in range(4)]
    # the half-turn maps half-edge 0 to 3 and 1 to 2
    assert codes[0] == codes[3] and codes[1] == codes[2]
    assert codes[0] != codes[1]
    q = path_map(4)
    p = [5, 2, 7, 0, 3, 6, 1, 4]
    sigma, alpha = [0] * 8, [0] * 8
    for h in range(8):
        sigma[p[h]], alpha[p[h]] = p[q.sigma[h]], p[q.alpha[h]]
    assert canonical_form(build_map(sigma, alpha)) == canonical_form(q)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rooted_pointed_codes_are_counted_exactly(n):
    codes = set()
    for tree in enum_well_labeled_trees(n):
        pq = miermont_inverse(tree.to_labeled_map())
        q, src = pq.quad, pq.sources[0]
        mark = [v == src for v in range(q.n_vertices)]
        codes.update(canonical_code(q, h, mark) for h in range(q.n_half_edges))
    assert len(codes) == 2 * 3**n * comb(2 * n, n) // (n + 1)


def test_skeleton_of_cycle_with_pendant_tree():
    m = cycle_with_pendant()
    assert m.n_faces == 2
    sk = skeleton(m)
    assert sk.map.n_edges == 3 and all(sk.map.degree(v) == 2 for v in range(3))
    assert reconstruct(sk) == m
    assert backbone(sk).tag == "cycle"


def test_skeleton_fixed_point_and_tree():
    m = theta()
    sk = skeleton(m)
    assert sk.map.n_edges == m.n_edges and not sk.removed
    assert skeleton(path_map(3)).empty
    assert backbone(skeleton(path_map(3))).tag == "tree"


def test_backbone_letters():
    m = theta()
    assert m.n_faces == 3
    assert classify_backbone(LabeledMap(m, (0, 0), (0, 1, 2))) == "a"
    f8 = figure_eight()
    assert f8.n_faces == 3
    letters = set()
    for order in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        letters.add(classify_backbone(LabeledMap(f8, (0,), order)))
    assert letters == {"b", "c", "d"}
