from collections import Counter

import numpy as np
import pytest

from threepoint.bijections import miermont_inverse
from threepoint.continuum import phi2
from threepoint.gf import two_point
from threepoint.maps import bfs_distances, bipartite_coloring, is_quadrangulation
from threepoint.oracle import enum_well_labeled_trees
from threepoint.sampler import (
    SamplerError,
    default_threads,
    empirical_geodesic_counts,
    empirical_three_point,
    empirical_two_point,
    ks_two_point,
    quad_adjacency,
    sample_pointed_quadrangulation,
    sample_tree,
    total_variation,
    two_point_histogram,
    uniformity_chi_square,
)


def test_n1_gives_the_path():
    q, src = sample_pointed_quadrangulation(1, 5)
    assert (q.n_vertices, q.n_edges) == (3, 2)
    assert sorted(q.degree(v) for v in range(3)) == [1, 1, 2]


@pytest.mark.parametrize("seed", range(8))
def test_sampled_maps_are_quadrangulations(seed):
    n = 3 + 7 * seed
    q, src = sample_pointed_quadrangulation(n, seed)
    assert q.n_vertices == n + 2 and q.n_faces == n
    assert is_quadrangulation(q)
    assert bipartite_coloring(q) is not None


def test_sample_tree_shape():
    d, lab = sample_tree(40, np.random.default_rng(1))
    assert d.sum() == 0 and np.all(np.cumsum(d) >= 0)
    assert lab.min() == 1 and len(lab) == 41
    with pytest.raises(SamplerError):
        sample_tree(0, np.random.default_rng(1))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_adjacency_matches_bijection(n):
    for tree in enum_well_labeled_trees(n):
        ptr, adj = quad_adjacency(tree.dyck, tree.labels)
        pq = miermont_inverse(tree.to_labeled_map())
        q, src = pq.quad, pq.sources[0]
        degs = sorted(np.diff(ptr).tolist())
        assert degs == sorted(q.degree(v) for v in range(q.n_vertices))
        d = bfs_distances(q, src)
        assert sorted(d) == sorted([0] + list(tree.labels))
        # vertex n+1 is the source and every edge joins labels differing by one
        lab = list(tree.labels) + [0]
        for v in range(n + 2):
            for k in range(ptr[v], ptr[v + 1]):
                assert abs(lab[v] - lab[adj[k]]) == 1


def test_two_point_is_deterministic_across_threads():
    a = empirical_two_point(300, 9000, seed=7, threads=1)
    b = empirical_two_point(300, 9000, seed=7, threads=3)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, empirical_two_point(300, 9000, seed=8, threads=1))


def test_two_point_small_n_matches_exact_law():
    n = 6
    d = empirical_two_point(n, 60000, seed=2)
    exact = {i: float(two_point(i, n)[n]) for i in range(1, 2 * n + 2)}
    total = sum(exact.values())
    emp = Counter(d.tolist())
    for i, w in exact.items():
        p = w / total
        assert abs(emp[i] / len(d) - p) < 4 * np.sqrt(p * (1 - p) / len(d)) + 1e-9


def test_two_point_large_n():
    n = 4096
    d = empirical_two_point(n, 20000, seed=3)
    assert ks_two_point(d, n, phi2) < 0.03
    assert ks_two_point(d, n, phi2, offset=0.5) > ks_two_point(d, n, phi2)
    centers, dens = two_point_histogram(d, n)
    width = centers[1] - centers[0]
    assert dens.sum() * width == pytest.approx(1.0)
    assert dens[centers > 6].sum() * width < 1e-3


def test_three_point_marginals():
    n = 500
    rows = empirical_three_point(n, 20000, seed=4)
    d12, d23, d31 = rows.T
    assert np.all(d12 + d23 >= d31) and np.all((d12 + d23 + d31) % 2 == 0)
    assert np.all(d12 > 0) and np.all(d23 > 0) and np.all(d31 > 0)
    two = empirical_two_point(n, 20000, seed=5)
    for col in (d12, d23, d31):
        assert ks_two_point(col, n, lambda x: np.interp(x, *_ecdf(two, n))) < 0.025


def _ecdf(d, n):
    counts = np.bincount(d)
    return (np.arange(len(counts)) + 1.5) / n**0.25, np.cumsum(counts) / len(d)


def test_geodesic_descent_matches_bfs():
    kw = dict(s=[1, 2, 3], d_min=8, n=600, samples=150, seed=9, pairs_per_map=4)
    a = empirical_geodesic_counts(**kw)
    b = empirical_geodesic_counts(**kw, full_bfs=True)
    assert a.accepted == b.accepted > 100
    for s in (1, 2, 3):
        assert np.array_equal(a.counts[s], b.counts[s])
        assert a.counts[s][0] == 0
        assert a.pmf(s).sum() == pytest.approx(1)


def test_geodesic_argument_checks():
    with pytest.raises(SamplerError):
        empirical_geodesic_counts(0, d_min=5, n=50, samples=10)
    with pytest.raises(SamplerError):
        empirical_geodesic_counts(1, d_min=10_000, n=50, samples=10)


def test_uniformity_small():
    res = uniformity_chi_square(2, 30000, seed=1)
    assert res["pvalue"] > 1e-3
    assert sum(res["observed"]) == 30000
    with pytest.raises(SamplerError):
        uniformity_chi_square(4, 10, seed=1)


def test_total_variation():
    assert total_variation(np.array([0.5, 0.5]), np.array([0.5, 0.25, 0.25])) == pytest.approx(0.25)


def test_default_threads(monkeypatch):
    monkeypatch.setenv("THREEPOINT_THREADS", "3")
    assert default_threads() == 3
    monkeypatch.setenv("THREEPOINT_THREADS", "x")
    assert default_threads() == 1
