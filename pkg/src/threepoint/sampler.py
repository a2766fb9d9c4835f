"""Uniform random pointed quadrangulations and Monte Carlo distance statistics.

A uniform rooted plane tree with ``n`` edges comes from the cycle lemma
applied to a uniform arrangement of ``n`` up-steps and ``n+1`` down-steps;
labels get independent uniform increments in {-1, 0, 1} and are shifted so
the minimum is 1.  The quadrangulation is the single-source inverse
bijection: each tree corner is joined to the next corner (in contour order)
with label one less, or to the source when its label is 1.  Labels are then
the distances from the source.

Random numbers come from numpy ``Generator`` streams.  Work is split into
fixed batches, batch ``b`` always using child ``b`` of the master
``SeedSequence``, so results depend only on the seed and the parameters, not
on how many threads run the batches.  The numba kernels release the GIL.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numba import njit

from .maps import PlanarMap

__all__ = [
    "SamplerError",
    "default_threads",
    "sample_tree",
    "sample_pointed_quadrangulation",
    "quad_adjacency",
    "empirical_two_point",
    "ks_two_point",
    "two_point_histogram",
    "empirical_three_point",
    "GeodesicCounts",
    "empirical_geodesic_counts",
    "total_variation",
    "uniformity_chi_square",
]

THREADS_ENV = "THREEPOINT_THREADS"


class SamplerError(RuntimeError):
    """Invalid sampling parameters or too few accepted samples."""


def default_threads() -> int:
    """Thread count from the ``THREEPOINT_THREADS`` environment variable (default 1)."""
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


# -- kernels ---------------------------------------------------------------------


@njit(cache=True, nogil=True)
def _dyck(n, u):
    """Dyck word from 2n+1 uniforms: uniform bridge, then cycle-lemma rotation."""
    m2 = 2 * n + 1
    steps = np.empty(m2, np.int8)
    ups = n
    rem = m2
    for i in range(m2):
        if u[i] * rem < ups:
            steps[i] = 1
            ups -= 1
        else:
            steps[i] = -1
        rem -= 1
    p = 0
    lo = 0
    k = 0
    for i in range(m2):
        p += steps[i]
        if p < lo:
            lo = p
            k = i + 1
    out = np.empty(2 * n, np.int8)
    for j in range(2 * n):
        out[j] = steps[(k + j) % m2]
    return out


@njit(cache=True, nogil=True)
def _labels(dyck, inc):
    """Preorder labels (vertex e+1 is the child of edge e), minimum shifted to 1,
    and the vertex at each of the 2n contour corners."""
    n = inc.shape[0]
    lab = np.zeros(n + 1, np.int64)
    corner = np.empty(2 * n, np.int64)
    stack = np.empty(n + 1, np.int64)
    top = 0
    stack[0] = 0
    e = 0
    for i in range(2 * n):
        v = stack[top]
        corner[i] = v
        if dyck[i] == 1:
            lab[e + 1] = lab[v] + inc[e]
            top += 1
            stack[top] = e + 1
            e += 1
        else:
            top -= 1
    lo = lab.min()
    for v in range(n + 1):
        lab[v] += 1 - lo
    return lab, corner


@njit(cache=True, nogil=True)
def _corner_chain(dyck, n):
    """First corner of every vertex and, for every corner, the next corner
    of the same vertex (-1 after the last)."""
    first = np.empty(n + 1, np.int64)
    nxt = np.full(2 * n, -1, np.int64)
    prev = np.empty(n + 1, np.int64)
    stack = np.empty(n + 1, np.int64)
    top = 0
    stack[0] = 0
    first[0] = 0
    prev[0] = 0
    e = 0
    for i in range(2 * n - 1):
        if dyck[i] == 1:
            e += 1
            v = e
            top += 1
            stack[top] = v
            first[v] = i + 1
        else:
            top -= 1
            v = stack[top]
            nxt[prev[v]] = i + 1
        prev[v] = i + 1
    return first, nxt


@njit(cache=True, nogil=True)
def _successors(lab, corner):
    """Corner index of each corner's successor; -1 stands for the source."""
    m = corner.shape[0]
    maxlab = lab.max()
    last = np.full(maxlab + 2, -1, np.int64)
    succ = np.empty(m, np.int64)
    for idx in range(2 * m - 1, -1, -1):
        pos = idx % m
        l = lab[corner[pos]]
        if idx < m:
            succ[pos] = -1 if l == 1 else last[l - 1] % m
        last[l] = idx
    return succ


@njit(cache=True, nogil=True)
def _quad_csr(lab, corner):
    """Adjacency (CSR) of the quadrangulation; the source is vertex n+1."""
    m = corner.shape[0]
    nv = lab.shape[0] + 1
    src = nv - 1
    sc = _successors(lab, corner)
    deg = np.zeros(nv + 1, np.int64)
    for i in range(m):
        b = src if sc[i] < 0 else corner[sc[i]]
        deg[corner[i] + 1] += 1
        deg[b + 1] += 1
    for v in range(nv):
        deg[v + 1] += deg[v]
    fill = deg[:-1].copy()
    adj = np.empty(2 * m, np.int64)
    for i in range(m):
        a = corner[i]
        b = src if sc[i] < 0 else corner[sc[i]]
        adj[fill[a]] = b
        fill[a] += 1
        adj[fill[b]] = a
        fill[b] += 1
    return deg, adj


@njit(cache=True, nogil=True)
def _bfs(start, ptr, adj, dist, queue):
    dist[:] = -1
    dist[start] = 0
    head = 0
    tail = 1
    queue[0] = start
    while head < tail:
        a = queue[head]
        head += 1
        da = dist[a] + 1
        for k in range(ptr[a], ptr[a + 1]):
            b = adj[k]
            if dist[b] < 0:
                dist[b] = da
                queue[tail] = b
                tail += 1


@njit(cache=True, nogil=True)
def _two_point_batch(n, U, INC, pick):
    out = np.empty(U.shape[0], np.int64)
    for b in range(U.shape[0]):
        lab, _ = _labels(_dyck(n, U[b]), INC[b])
        out[b] = lab[min(n, int(pick[b] * (n + 1)))]
    return out


@njit(cache=True, nogil=True)
def _three_point_batch(n, U, INC, pick2, pick3):
    out = np.empty((U.shape[0], 3), np.int64)
    dist = np.empty(n + 2, np.int64)
    queue = np.empty(n + 2, np.int64)
    for b in range(U.shape[0]):
        lab, corner = _labels(_dyck(n, U[b]), INC[b])
        ptr, adj = _quad_csr(lab, corner)
        v2 = min(n, int(pick2[b] * (n + 1)))
        v3 = min(n - 1, int(pick3[b] * n))
        if v3 >= v2:
            v3 += 1
        _bfs(v2, ptr, adj, dist, queue)
        out[b, 0] = lab[v2]
        out[b, 1] = dist[v3]
        out[b, 2] = lab[v3]
    return out


@njit(cache=True, nogil=True)
def _count_bfs(v2, d12, lab, ptr, adj, s_values, dist, queue, out):
    """Counts from a full BFS: v is a geodesic point iff l(v) = s and d2(v) = d12 - s."""
    _bfs(v2, ptr, adj, dist, queue)
    out[:] = 0
    for v in range(lab.shape[0]):
        for k in range(s_values.shape[0]):
            if lab[v] == s_values[k] and dist[v] == d12 - s_values[k]:
                out[k] += 1


@njit(cache=True, nogil=True)
def _count_descent(v2, lab, corner, succ, first, nxt, s_values, seen, queue, out):
    """Counts from the label-descending search out of v2.

    v lies on a geodesic between the source and v2 iff some path from v2 to v
    lowers the label by exactly one at every step.  Every edge joins a corner
    to its successor, one label lower, so the lower neighbours of a vertex are
    the successors of its corners and only that cone is explored.
    """
    out[:] = 0
    seen[v2] = True
    head = 0
    tail = 1
    queue[0] = v2
    while head < tail:
        a = queue[head]
        head += 1
        la = lab[a]
        for k in range(s_values.shape[0]):
            if la == s_values[k]:
                out[k] += 1
        if la <= 1:
            continue
        i = first[a]
        while i >= 0:
            b = corner[succ[i]]
            if not seen[b]:
                seen[b] = True
                queue[tail] = b
                tail += 1
            i = nxt[i]
    for j in range(tail):
        seen[queue[j]] = False


@njit(cache=True, nogil=True)
def _geodesic_batch(n, U, INC, picks, d_min, s_values, max_c, full_bfs):
    """For each map and each accepted second vertex (label >= d_min), count
    vertices v with l(v) = s and l(v) + d2(v) = l(v2), for every s."""
    ns = s_values.shape[0]
    hist = np.zeros((ns, max_c + 2), np.int64)
    dist = np.empty(n + 2, np.int64)
    queue = np.empty(n + 2, np.int64)
    seen = np.zeros(n + 2, np.bool_)
    out = np.zeros(ns, np.int64)
    for b in range(U.shape[0]):
        dyck = _dyck(n, U[b])
        lab, corner = _labels(dyck, INC[b])
        if lab.max() < d_min:
            continue
        if full_bfs:
            ptr, adj = _quad_csr(lab, corner)
        else:
            succ = _successors(lab, corner)
            first, nxt = _corner_chain(dyck, n)
        for j in range(picks.shape[1]):
            v2 = min(n, int(picks[b, j] * (n + 1)))
            d12 = lab[v2]
            if d12 < d_min:
                continue
            if full_bfs:
                _count_bfs(v2, d12, lab, ptr, adj, s_values, dist, queue, out)
            else:
                _count_descent(v2, lab, corner, succ, first, nxt, s_values, seen, queue, out)
            for k in range(ns):
                hist[k, min(out[k], max_c + 1)] += 1
    return hist


@njit(cache=True, nogil=True)
def _tree_keys(n, U, INC):
    """Integer code of each sampled labeled tree: Dyck bits then labels in base 4."""
    out = np.empty(U.shape[0], np.int64)
    for b in range(U.shape[0]):
        d = _dyck(n, U[b])
        lab, _ = _labels(d, INC[b])
        key = 0
        for i in range(2 * n):
            key = key * 2 + (1 if d[i] == 1 else 0)
        for v in range(n + 1):
            key = key * 4 + lab[v]
        out[b] = key
    return out


# -- batching ------------------------------------------------------------------------


def _batch_plan(samples: int, n: int) -> list[int]:
    per = max(1, min(4096, (1 << 22) // (2 * n + 1)))
    sizes = [per] * (samples // per)
    if samples % per:
        sizes.append(samples % per)
    return sizes


def _run_batches(seed: int, samples: int, n: int, job, threads: int | None):
    sizes = _batch_plan(samples, n)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    tasks = list(zip(children, sizes))
    threads = threads or default_threads()
    if threads == 1:
        return [job(np.random.default_rng(ss), size) for ss, size in tasks]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(lambda a: job(np.random.default_rng(a[0]), a[1]), tasks))


def _draw_trees(rng: np.random.Generator, size: int, n: int):
    U = rng.random((size, 2 * n + 1))
    INC = rng.integers(-1, 2, size=(size, n), dtype=np.int64)
    return U, INC


# -- public API ------------------------------------------------------------------


def sample_tree(n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """One uniform labeled tree: (Dyck word as +-1 array, preorder labels with min 1)."""
    if n < 1:
        raise SamplerError("n must be positive")
    U, INC = _draw_trees(rng, 1, n)
    d = _dyck(n, U[0])
    lab, _ = _labels(d, INC[0])
    return d, lab


def quad_adjacency(dyck, labels) -> tuple[np.ndarray, np.ndarray]:
    """CSR adjacency ``(ptr, adj)`` of the quadrangulation of a labeled tree."""
    d = np.asarray(dyck, dtype=np.int8)
    lab = np.asarray(labels, dtype=np.int64)
    n = len(d) // 2
    inc = np.zeros(n, np.int64)
    _, corner = _labels(d, inc)
    return _quad_csr(lab, corner)


def sample_pointed_quadrangulation(n: int, seed) -> tuple[PlanarMap, int]:
    """Uniform pointed quadrangulation with ``n`` faces as an explicit map."""
    from .bijections import miermont_inverse
    from .maps import LabeledMap
    from .oracle import plane_tree_map

    rng = np.random.default_rng(seed)
    d, lab = sample_tree(n, rng)
    m, _ = plane_tree_map(tuple(int(x) for x in d))
    pq = miermont_inverse(LabeledMap(m, tuple(int(x) for x in lab), (0,)))
    return pq.quad, pq.sources[0]


def empirical_two_point(n: int, samples: int, seed: int, threads: int | None = None) -> np.ndarray:
    """Distances from the pointed vertex to a uniform other vertex, one per sampled map."""
    if n < 1 or samples < 1:
        raise SamplerError("n and samples must be positive")

    def job(rng, size):
        U, INC = _draw_trees(rng, size, n)
        return _two_point_batch(n, U, INC, rng.random(size))

    return np.concatenate(_run_batches(seed, samples, n, job, threads))


def ks_two_point(distances: np.ndarray, n: int, cdf, offset: float = 1.5) -> float:
    """Kolmogorov-Smirnov distance between integer distances and a continuous law of ``D``.

    The empirical CDF ``P(d <= i)`` is compared to ``cdf((i + offset) / n^{1/4})``
    for every ``i`` from 0 to the sample maximum.  The default offset 3/2 is
    the lattice centering of the exact two-point function: ``R_i`` is
    invariant under ``i -> -3 - i``, so it depends on ``i`` through
    ``i + 3/2``, and with this centering the finite-size error drops from
    order ``n^{-1/4}`` to order ``n^{-1/2}``.  ``offset=0.5`` gives the plain
    continuity correction of ``D = d / n^{1/4}``.
    """
    d = np.asarray(distances)
    counts = np.bincount(d)
    emp = np.cumsum(counts) / len(d)
    grid = (np.arange(len(counts)) + offset) / n**0.25
    return float(np.max(np.abs(emp - cdf(grid))))


def two_point_histogram(distances: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Density histogram over ``D = d / n^{1/4}``: returns (bin centers, density), one bin per integer distance."""
    counts = np.bincount(np.asarray(distances))
    width = 1.0 / n**0.25
    return np.arange(len(counts)) * width, counts / (counts.sum() * width)


def empirical_three_point(n: int, samples: int, seed: int, threads: int | None = None) -> np.ndarray:
    """Rows ``(d12, d23, d31)``: pointed vertex 1 plus two distinct uniform vertices."""
    if n < 2 or samples < 1:
        raise SamplerError("need n >= 2 and samples >= 1")

    def job(rng, size):
        U, INC = _draw_trees(rng, size, n)
        return _three_point_batch(n, U, INC, rng.random(size), rng.random(size))

    return np.concatenate(_run_batches(seed, samples, n, job, threads))


@dataclass
class GeodesicCounts:
    """Histogram of the number ``c`` of geodesic points, per distance ``s``.

    ``counts[s][c]`` for ``c = 0 .. max_c``; the last entry pools ``c > max_c``.
    """

    s_values: tuple[int, ...]
    counts: dict[int, np.ndarray]
    accepted: int

    def pmf(self, s: int) -> np.ndarray:
        h = self.counts[s]
        return h / h.sum()

    def mean(self, s: int) -> float:
        h = self.counts[s][:-1]
        return float(np.dot(np.arange(len(h)), h) / h.sum())


def empirical_geodesic_counts(
    s, d_min: int = 30, n: int = 100_000, samples: int = 2000, seed: int = 0,
    pairs_per_map: int = 16, max_c: int = 60, min_accepted: int = 100, threads: int | None = None,
    full_bfs: bool = False,
) -> GeodesicCounts:
    """Geodesic-point counts at distance(s) ``s`` between the pointed vertex and
    uniform second vertices at distance at least ``d_min``.

    ``samples`` maps are drawn; each contributes up to ``pairs_per_map``
    second vertices (rejected when closer than ``d_min``).  Counting uses the
    label-descending search unless ``full_bfs`` asks for a BFS from each second
    vertex (slower, same result).
    """
    s_values = tuple(int(x) for x in np.atleast_1d(s))
    if any(x < 1 or x >= d_min for x in s_values):
        raise SamplerError("need 1 <= s < d_min")
    s_arr = np.array(s_values, np.int64)

    def job(rng, size):
        U, INC = _draw_trees(rng, size, n)
        return _geodesic_batch(n, U, INC, rng.random((size, pairs_per_map)), d_min, s_arr, max_c, full_bfs)

    hist = sum(_run_batches(seed, samples, n, job, threads))
    accepted = int(hist[0].sum())
    if accepted < min_accepted:
        raise SamplerError(f"only {accepted} pairs at distance >= {d_min} were found; increase n or samples")
    if hist[:, 0].any():
        raise SamplerError("a realized distance had no geodesic point at some s: BFS inconsistency")
    return GeodesicCounts(s_values, {x: hist[k] for k, x in enumerate(s_values)}, accepted)


def total_variation(p: np.ndarray, q: np.ndarray) -> float:
    m = max(len(p), len(q))
    p = np.pad(np.asarray(p, float), (0, m - len(p)))
    q = np.pad(np.asarray(q, float), (0, m - len(q)))
    return 0.5 * float(np.abs(p - q).sum())


def _class_table(n: int):
    """tree key -> class id, and the expected class probabilities.

    Classes are pointed quadrangulations up to isomorphism.  A uniform pointed
    rooted quadrangulation falls in a class with probability proportional to
    its number of distinct rootings, counted from canonical codes.
    """
    from .bijections import miermont_inverse, quad_canonical_form
    from .maps import canonical_code
    from .oracle import enum_well_labeled_trees

    classes = {}
    rootings = []
    tree_count = []
    key_to_class = {}
    for tree in enum_well_labeled_trees(n):
        pq = miermont_inverse(tree.to_labeled_map())
        form = quad_canonical_form(pq)
        if form not in classes:
            q = pq.quad
            mark = [1 if v == pq.sources[0] else 0 for v in range(q.n_vertices)]
            codes = {canonical_code(q, r, mark) for r in range(q.n_half_edges)}
            classes[form] = len(classes)
            rootings.append(len(codes))
            tree_count.append(0)
        cid = classes[form]
        tree_count[cid] += 1
        key = 0
        for step in tree.dyck:
            key = key * 2 + (1 if step == 1 else 0)
        for x in tree.labels:
            key = key * 4 + x
        key_to_class[key] = cid
    total = sum(rootings)
    expected = [Fraction(r, total) for r in rootings]
    return key_to_class, expected, tree_count


def uniformity_chi_square(n: int, samples: int, seed: int, threads: int | None = None) -> dict:
    """Chi-square test of sampled pointed-quadrangulation classes against exact class weights."""
    from scipy.stats import chisquare

    if not 1 <= n <= 3:
        raise SamplerError("class enumeration is limited to n <= 3")
    key_to_class, expected, tree_count = _class_table(n)
    probs = [float(p) for p in expected]

    def job(rng, size):
        U, INC = _draw_trees(rng, size, n)
        return _tree_keys(n, U, INC)

    keys = np.concatenate(_run_batches(seed, samples, n, job, threads))
    uniq, cnt = np.unique(keys, return_counts=True)
    observed = np.zeros(len(expected))
    for k, c in zip(uniq.tolist(), cnt.tolist()):
        if k not in key_to_class:
            raise SamplerError(f"sampled tree key {k} is not a valid labeled tree")
        observed[key_to_class[k]] += c
    exp = np.array(probs) * samples
    stat, pvalue = chisquare(observed, exp)
    return {
        "n": n,
        "classes": len(expected),
        "statistic": float(stat),
        "pvalue": float(pvalue),
        "observed": observed.astype(int).tolist(),
        "expected": exp.tolist(),
        "trees_per_class": tree_count,
    }
