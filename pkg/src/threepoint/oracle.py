"""Exhaustive ground truth at small sizes.

Every rooted well-labeled tree with ``n`` edges and minimum label 1 is turned
into a pointed quadrangulation by the single-source inverse bijection.  Rooted
pointed quadrangulations are twice as numerous as these trees (the root edge
of the quadrangulation carries an extra orientation bit), and every unrooted
multi-pointed quadrangulation with ``n`` faces has ``4n / |Aut|`` rootings.
Hence the symmetry-weighted number of (quadrangulation, ordered marked
vertices) with some property equals ``2/(4n)`` times the number of
(tree, remaining marked vertices) with that property, the first marked vertex
being the source.  No automorphism group is ever computed; integrality of the
resulting triply-pointed counts is asserted instead.
"""

from __future__ import annotations

import json
import random
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator

from .bijections import miermont_inverse
from .gf import DistanceTriple
from .maps import LabeledMap, PlanarMap, bfs_distances

__all__ = [
    "OracleError",
    "GUARDS",
    "LabeledTree",
    "dyck_words",
    "plane_tree_map",
    "enum_well_labeled_trees",
    "random_labeled_tree",
    "count_triples",
    "count_pairs",
    "count_geodesic_points",
    "table_to_json",
]

# size guards; raise them deliberately for slow runs
GUARDS = {"trees": 7, "triples": 5, "pairs": 5, "geodesic": 5}


class OracleError(RuntimeError):
    """Enumeration refused (size guard) or an internal consistency check failed."""


def _guard(kind: str, n: int):
    if n < 1:
        raise OracleError("n must be positive")
    if n > GUARDS[kind]:
        raise OracleError(f"n={n} exceeds the {kind} guard {GUARDS[kind]}; raise oracle.GUARDS[{kind!r}] to force")


def dyck_words(n: int) -> Iterator[tuple[int, ...]]:
    """All Dyck words of semilength ``n`` as tuples of +1/-1 steps."""
    word = []

    def rec(up, height):
        if len(word) == 2 * n:
            yield tuple(word)
            return
        if up < n:
            word.append(1)
            yield from rec(up + 1, height + 1)
            word.pop()
        if height > 0:
            word.append(-1)
            yield from rec(up, height - 1)
            word.pop()

    yield from rec(0, 0)


def plane_tree_map(dyck: tuple[int, ...]) -> tuple[PlanarMap, tuple[int, ...]]:
    """Plane tree of a Dyck word, rooted at the corner before its first edge.

    Edge ``e`` is the ``e``-th up step; half-edge ``2e`` goes from parent to
    child, ``2e+1`` back.  The face traversal from half-edge 0 follows the
    contour of the word.  Vertices come out in preorder: vertex ``e+1`` is
    the child of edge ``e``.  Also returns the parent edge's parent vertex
    for every edge.
    """
    n = len(dyck) // 2
    children = [[] for _ in range(n + 1)]
    parent_vertex = []
    stack = [0]
    e = 0
    for step in dyck:
        if step == 1:
            children[stack[-1]].append(2 * e)
            parent_vertex.append(stack[-1])
            stack.append(e + 1)
            e += 1
        else:
            stack.pop()
    sigma = [0] * (2 * n)
    for v in range(n + 1):
        # counterclockwise rotation: parent half-edge, then children in reverse contour order
        ring = ([2 * v - 1] if v else []) + children[v][::-1]
        for i, h in enumerate(ring):
            sigma[h] = ring[(i + 1) % len(ring)]
    alpha = [h ^ 1 for h in range(2 * n)]
    return PlanarMap(sigma, alpha), tuple(parent_vertex)


@dataclass(frozen=True)
class LabeledTree:
    """Rooted plane tree with labels in preorder; minimum label 1."""

    dyck: tuple[int, ...]
    labels: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.dyck) // 2

    def to_labeled_map(self) -> LabeledMap:
        m, _ = plane_tree_map(self.dyck)
        return LabeledMap(m, self.labels, (0,))

    def key(self) -> tuple:
        return (self.dyck, self.labels)


def enum_well_labeled_trees(n: int) -> Iterator[LabeledTree]:
    """Each rooted plane tree with ``n`` edges and each label assignment with
    increments in {-1, 0, 1} along edges and minimum label 1, exactly once."""
    _guard("trees", n)
    for dyck in dyck_words(n):
        parents = []
        stack = [0]
        v = 0
        for step in dyck:
            if step == 1:
                v += 1
                parents.append(stack[-1])
                stack.append(v)
            else:
                stack.pop()
        for inc in product((-1, 0, 1), repeat=n):
            lab = [0] * (n + 1)
            for e in range(n):
                lab[e + 1] = lab[parents[e]] + inc[e]
            lo = min(lab)
            yield LabeledTree(dyck, tuple(x + 1 - lo for x in lab))


def random_labeled_tree(n: int, rng: random.Random) -> LabeledTree:
    """Uniform rooted labeled tree with ``n`` edges, minimum label 1 (cycle lemma)."""
    steps = [1] * n + [-1] * (n + 1)
    rng.shuffle(steps)
    h = lo = start = 0
    for i, step in enumerate(steps):
        h += step
        if h < lo:
            lo, start = h, i + 1
    word = tuple((steps[start:] + steps[:start])[:-1])
    _, parent = plane_tree_map(word)
    lab = [0] * (n + 1)
    for e in range(n):
        lab[e + 1] = lab[parent[e]] + rng.choice((-1, 0, 1))
    low = min(lab)
    return LabeledTree(word, tuple(x + 1 - low for x in lab))


def _pointed_quads(n: int):
    """(quadrangulation, source, distance-from-source list) for every tree."""
    for tree in enum_well_labeled_trees(n):
        pq = miermont_inverse(tree.to_labeled_map())
        q = pq.quad
        src = pq.sources[0]
        yield q, src, bfs_distances(q, src)


def count_triples(n: int) -> dict[DistanceTriple, int]:
    """Symmetry-weighted count of triply-pointed quadrangulations with n faces,
    by pairwise distance profile.  The weighted count is an integer because
    triply-pointed planar quadrangulations have no symmetries."""
    _guard("triples", n)
    raw = Counter()
    for q, src, d1 in _pointed_quads(n):
        for v2 in range(q.n_vertices):
            if v2 == src:
                continue
            d2 = bfs_distances(q, v2)
            for v3 in range(q.n_vertices):
                if v3 == src or v3 == v2:
                    continue
                raw[(d1[v2], d2[v3], d1[v3])] += 1
    table = {}
    for (d12, d23, d31), k in sorted(raw.items()):
        if (2 * k) % (4 * n):
            raise OracleError(f"non-integral count 2*{k}/{4 * n} for {(d12, d23, d31)}: enumeration bug")
        table[DistanceTriple(d12, d23, d31)] = 2 * k // (4 * n)
    return table


def count_pairs(n: int) -> dict[int, Fraction]:
    """Symmetry-weighted count of doubly-pointed quadrangulations by distance."""
    _guard("pairs", n)
    raw = Counter()
    for q, src, d1 in _pointed_quads(n):
        for v in range(q.n_vertices):
            if v != src:
                raw[d1[v]] += 1
    return {i: Fraction(2 * k, 4 * n) for i, k in sorted(raw.items())}


def count_geodesic_points(n: int, s: int, t: int) -> dict[int, Fraction]:
    """Symmetry-weighted count of doubly-pointed quadrangulations at distance
    ``s+t``, by the number ``c`` of vertices at distance ``s`` from the first
    point and ``t`` from the second."""
    _guard("geodesic", n)
    raw = Counter()
    for q, src, d1 in _pointed_quads(n):
        for v2 in range(q.n_vertices):
            if d1[v2] != s + t:
                continue
            d2 = bfs_distances(q, v2)
            c = sum(1 for v in range(q.n_vertices) if d1[v] == s and d2[v] == t)
            raw[c] += 1
    return {c: Fraction(2 * k, 4 * n) for c, k in sorted(raw.items())}


def table_to_json(table: dict) -> str:
    """JSON dump with rationals as "p/q" strings and triples as "d12,d23,d31"."""

    def key(k):
        return ",".join(map(str, (k.d12, k.d23, k.d31))) if isinstance(k, DistanceTriple) else str(k)

    return json.dumps({key(k): str(v) for k, v in table.items()}, indent=1, sort_keys=True)
