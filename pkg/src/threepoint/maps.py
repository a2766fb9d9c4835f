"""Planar maps as rotation systems on half-edges.

Conventions, fixed once for the whole package:

* ``alpha[h]`` is the opposite half-edge of ``h``; ``sigma[h]`` is the next
  half-edge counterclockwise around the origin vertex of ``h``.
* The face of ``h`` is the face on its *left*.  Faces are traversed
  counterclockwise (face on the left) by ``h -> sigma^-1(alpha(h))``.
* A corner is identified with the half-edge it follows counterclockwise: the
  corner of ``h`` is the angular sector between ``h`` and ``sigma[h]``.  It
  lies in the face of ``h``, so the corners of a face, read in traversal
  order, are exactly its half-edges in traversal order.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

__all__ = [
    "MapError",
    "PlanarMap",
    "LabeledMap",
    "build_map",
    "bfs_distances",
    "canonical_code",
    "canonical_form",
    "path_map",
    "is_quadrangulation",
    "bipartite_coloring",
    "Skeleton",
    "skeleton",
    "reconstruct",
    "Backbone",
    "backbone",
    "classify_backbone",
]


class MapError(ValueError):
    """Invalid rotation system or a violated map invariant."""


def _cycles(perm: Sequence[int]) -> tuple[list[list[int]], list[int]]:
    owner = [-1] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if owner[start] >= 0:
            continue
        cyc = []
        h = start
        while owner[h] < 0:
            owner[h] = len(cycles)
            cyc.append(h)
            h = perm[h]
        cycles.append(cyc)
    return cycles, owner


class PlanarMap:
    """Validated genus-0 map.  Immutable once built."""

    __slots__ = ("sigma", "alpha", "sigma_inv", "vertices", "vertex_of", "faces", "face_of")

    def __init__(self, sigma: Sequence[int], alpha: Sequence[int], check: bool = True):
        sigma = tuple(int(h) for h in sigma)
        alpha = tuple(int(h) for h in alpha)
        n = len(sigma)
        if len(alpha) != n:
            raise MapError("sigma and alpha must have the same length")
        if n == 0 or n % 2:
            raise MapError(f"need a positive even number of half-edges, got {n}")
        if check:
            if sorted(sigma) != list(range(n)):
                raise MapError("sigma is not a permutation")
            if any(alpha[h] == h or not 0 <= alpha[h] < n or alpha[alpha[h]] != h for h in range(n)):
                raise MapError("alpha is not a fixed-point-free involution")
        sigma_inv = [0] * n
        for h, k in enumerate(sigma):
            sigma_inv[k] = h
        self.sigma = sigma
        self.alpha = alpha
        self.sigma_inv = tuple(sigma_inv)
        vertices, vertex_of = _cycles(sigma)
        phi = [sigma_inv[alpha[h]] for h in range(n)]
        faces, face_of = _cycles(phi)
        self.vertices = vertices
        self.vertex_of = vertex_of
        self.faces = faces
        self.face_of = face_of
        if check:
            self._check_connected()
            chi = self.n_vertices - self.n_edges + self.n_faces
            if chi != 2:
                raise MapError(f"map is not planar: V - E + F = {chi}, genus {(2 - chi) // 2}")

    def _check_connected(self):
        seen = [False] * len(self.vertices)
        seen[0] = True
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for h in self.vertices[v]:
                w = self.vertex_of[self.alpha[h]]
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        if not all(seen):
            raise MapError("map is not connected")

    @property
    def n_half_edges(self) -> int:
        return len(self.sigma)

    @property
    def n_edges(self) -> int:
        return len(self.sigma) // 2

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def degree(self, v: int) -> int:
        return len(self.vertices[v])

    def face_degree(self, f: int) -> int:
        return len(self.faces[f])

    def phi(self, h: int) -> int:
        """Next half-edge along the face on the left of ``h``."""
        return self.sigma_inv[self.alpha[h]]

    def target(self, h: int) -> int:
        return self.vertex_of[self.alpha[h]]

    def neighbors(self, v: int) -> list[int]:
        return [self.vertex_of[self.alpha[h]] for h in self.vertices[v]]

    def adjacency(self) -> list[list[int]]:
        return [self.neighbors(v) for v in range(self.n_vertices)]

    def to_dict(self) -> dict:
        return {"sigma": list(self.sigma), "alpha": list(self.alpha)}

    def __eq__(self, other):
        return isinstance(other, PlanarMap) and self.sigma == other.sigma and self.alpha == other.alpha

    def __hash__(self):
        return hash((self.sigma, self.alpha))

    def __repr__(self):
        return f"PlanarMap(V={self.n_vertices}, E={self.n_edges}, F={self.n_faces})"


def build_map(sigma: Sequence[int], alpha: Sequence[int]) -> PlanarMap:
    return PlanarMap(sigma, alpha)


def path_map(k: int) -> PlanarMap:
    """A path with ``k`` edges; vertex 0 is one endpoint (half-edge 0 leaves it)."""
    if k < 1:
        raise MapError("path needs at least one edge")
    # edge e joins vertex e (half-edge 2e) to vertex e+1 (half-edge 2e+1)
    alpha = [h ^ 1 for h in range(2 * k)]
    sigma = list(range(2 * k))
    for e in range(1, k):
        sigma[2 * e - 1], sigma[2 * e] = 2 * e, 2 * e - 1
    return PlanarMap(sigma, alpha)


@dataclass(frozen=True)
class LabeledMap:
    """A planar map with integer vertex labels.

    ``face_order`` lists the face indices of the distinguished faces 1..p,
    ``marked_vertex`` is an optional extra marked vertex, and ``origin``
    optionally records, per vertex, the vertex it came from in another map.
    """

    map: PlanarMap
    labels: tuple[int, ...]
    face_order: tuple[int, ...] = ()
    marked_vertex: int | None = None
    origin: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        m = self.map
        if len(self.labels) != m.n_vertices:
            raise MapError("one label per vertex required")
        for h in range(m.n_half_edges):
            if abs(self.labels[m.vertex_of[h]] - self.labels[m.target(h)]) > 1:
                raise MapError(f"labels differ by more than one along half-edge {h}")
        if len(set(self.face_order)) != len(self.face_order):
            raise MapError("distinguished faces must be distinct")
        if any(not 0 <= f < m.n_faces for f in self.face_order):
            raise MapError("face index out of range")

    def face_labels(self, f: int) -> list[int]:
        return [self.labels[self.map.vertex_of[h]] for h in self.map.faces[f]]

    def face_min(self, f: int) -> int:
        return min(self.face_labels(f))

    def face_index(self, h: int) -> int:
        """1-based distinguished index of the face left of ``h``; 0 if undistinguished."""
        f = self.map.face_of[h]
        return self.face_order.index(f) + 1 if f in self.face_order else 0

    def vertices_of_face(self, f: int) -> set[int]:
        return {self.map.vertex_of[h] for h in self.map.faces[f]}

    def to_json(self) -> str:
        return json.dumps(
            {
                "sigma": list(self.map.sigma),
                "alpha": list(self.map.alpha),
                "labels": list(self.labels),
                "face_order": list(self.face_order),
                "marked_vertex": self.marked_vertex,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "LabeledMap":
        d = json.loads(text)
        return cls(
            PlanarMap(d["sigma"], d["alpha"]),
            tuple(d["labels"]),
            tuple(d.get("face_order", ())),
            d.get("marked_vertex"),
        )


def bfs_distances(m: PlanarMap, v: int) -> list[int]:
    """Graph distances from ``v`` to every vertex."""
    if not 0 <= v < m.n_vertices:
        raise MapError(f"vertex {v} not in map")
    dist = [-1] * m.n_vertices
    dist[v] = 0
    queue = deque([v])
    alpha, vertex_of, vertices = m.alpha, m.vertex_of, m.vertices
    while queue:
        a = queue.popleft()
        da = dist[a] + 1
        for h in vertices[a]:
            b = vertex_of[alpha[h]]
            if dist[b] < 0:
                dist[b] = da
                queue.append(b)
    return dist


def is_quadrangulation(m: PlanarMap) -> bool:
    return all(len(f) == 4 for f in m.faces)


def bipartite_coloring(m: PlanarMap) -> list[int] | None:
    """Proper 2-coloring of the vertices, or None if the map is not bipartite."""
    color = [d % 2 for d in bfs_distances(m, 0)]
    for h in range(m.n_half_edges):
        if color[m.vertex_of[h]] == color[m.target(h)]:
            return None
    return color


# -- canonical codes -----------------------------------------------------------


def canonical_code(m: PlanarMap, root: int, vertex_data: Sequence | None = None, he_data: Sequence | None = None) -> bytes:
    """Encoding of ``m`` rooted at half-edge ``root`` that is invariant under relabeling.

    Half-edges are renumbered in order of discovery by a breadth-first sweep
    following sigma then alpha.  Two rooted maps (with their decorations) get
    the same code iff they are isomorphic by a root-preserving isomorphism.
    """
    n = m.n_half_edges
    if not 0 <= root < n:
        raise MapError(f"root {root} not in map")
    new = [-1] * n
    order = [root]
    new[root] = 0
    i = 0
    while i < len(order):
        h = order[i]
        i += 1
        for k in (m.sigma[h], m.alpha[h]):
            if new[k] < 0:
                new[k] = len(order)
                order.append(k)
    parts = [[new[m.sigma[h]] for h in order], [new[m.alpha[h]] for h in order]]
    if vertex_data is not None:
        parts.append([vertex_data[m.vertex_of[h]] for h in order])
    if he_data is not None:
        parts.append([he_data[h] for h in order])
    return json.dumps(parts, separators=(",", ":")).encode()


def canonical_form(m: PlanarMap, vertex_data: Sequence | None = None, he_data: Sequence | None = None, roots: Sequence[int] | None = None) -> bytes:
    """Root-free canonical code: the minimum rooted code over candidate roots.

    By default the candidates are the half-edges whose (vertex datum, degree,
    half-edge datum) key is minimal, an isomorphism-invariant subset.
    """
    if roots is None:

        def key(h):
            v = m.vertex_of[h]
            return (
                vertex_data[v] if vertex_data is not None else 0,
                m.degree(v),
                he_data[h] if he_data is not None else 0,
            )

        best = min(key(h) for h in range(m.n_half_edges))
        roots = [h for h in range(m.n_half_edges) if key(h) == best]
    return min(canonical_code(m, r, vertex_data, he_data) for r in roots)


# -- skeleton and backbone -------------------------------------------------------


@dataclass(frozen=True)
class Skeleton:
    """Result of pruning all tree components from a map.

    ``half_edges`` lists, for each half-edge of ``map``, the original half-edge
    it came from; ``vertex_origin`` does the same for vertices.  ``removed``
    holds, in removal order, ``(attach, leaf, pred)`` triples of original
    half-edges, which is what :func:`reconstruct` replays backwards.
    """

    original: LabeledMap
    map: PlanarMap | None
    half_edges: tuple[int, ...]
    vertex_origin: tuple[int, ...]
    removed: tuple[tuple[int, int, int], ...]

    @property
    def empty(self) -> bool:
        return self.map is None

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(self.original.labels[v] for v in self.vertex_origin)


def skeleton(lm: LabeledMap | PlanarMap) -> Skeleton:
    """Iteratively erase edges incident to univalent vertices."""
    if isinstance(lm, PlanarMap):
        lm = LabeledMap(lm, (0,) * lm.n_vertices)
    m = lm.map
    n = m.n_half_edges
    sigma = list(m.sigma)
    sigma_inv = list(m.sigma_inv)
    alive = [True] * n
    deg = [m.degree(v) for v in range(m.n_vertices)]
    removed = []
    stack = [h for h in range(n) if deg[m.vertex_of[h]] == 1]
    while stack:
        leaf = stack.pop()
        if not alive[leaf] or deg[m.vertex_of[leaf]] != 1:
            continue
        attach = m.alpha[leaf]
        if deg[m.vertex_of[attach]] == 1:
            # single edge left: the whole map was a tree
            return Skeleton(lm, None, (), (), tuple(removed))
        pred, nxt = sigma_inv[attach], sigma[attach]
        sigma[pred], sigma_inv[nxt] = nxt, pred
        alive[leaf] = alive[attach] = False
        removed.append((attach, leaf, pred))
        deg[m.vertex_of[leaf]] -= 1
        w = m.vertex_of[attach]
        deg[w] -= 1
        if deg[w] == 1:
            stack.append(nxt)
    kept = [h for h in range(n) if alive[h]]
    if not kept:
        return Skeleton(lm, None, (), (), tuple(removed))
    index = {h: i for i, h in enumerate(kept)}
    sk = PlanarMap([index[sigma[h]] for h in kept], [index[m.alpha[h]] for h in kept])
    vorigin = tuple(m.vertex_of[kept[c[0]]] for c in sk.vertices)
    return Skeleton(lm, sk, tuple(kept), vorigin, tuple(removed))


def reconstruct(sk: Skeleton) -> PlanarMap:
    """Rebuild the original map from a skeleton and its pruning record."""
    m = sk.original.map
    n = m.n_half_edges
    sigma = list(range(n))
    for i, h in enumerate(sk.half_edges):
        sigma[h] = sk.half_edges[sk.map.sigma[i]]
    for attach, leaf, pred in reversed(sk.removed):
        sigma[attach] = sigma[pred]
        sigma[pred] = attach
        sigma[leaf] = leaf
    return PlanarMap(sigma, m.alpha)


@dataclass(frozen=True)
class Backbone:
    """Skeleton with bivalent vertices smoothed out.

    ``map`` is None for a pure cycle.  ``face_index[h]`` is the distinguished
    index (1-based, 0 if none) of the face left of backbone half-edge ``h``.
    """

    map: PlanarMap | None
    face_index: tuple[int, ...]
    tag: str


def backbone(sk: Skeleton) -> Backbone:
    if sk.empty:
        return Backbone(None, (), "tree")
    m = sk.map
    lm = sk.original
    keep = [h for h in range(m.n_half_edges) if m.degree(m.vertex_of[h]) >= 3]
    if not keep:
        return Backbone(None, (), "cycle")
    partner = {}
    for h in keep:
        a = m.alpha[h]
        while m.degree(m.vertex_of[a]) == 2:
            a = m.alpha[m.sigma[a]]
        partner[h] = a
    index = {h: i for i, h in enumerate(keep)}
    bb = PlanarMap([index[m.sigma[h]] for h in keep], [index[partner[h]] for h in keep])
    faces = tuple(lm.face_index(sk.half_edges[h]) for h in keep)
    b = Backbone(bb, faces, "")
    return Backbone(bb, faces, _backbone_tag(b))


# Backbone letters for three distinguished faces.  (a) is the theta graph.
# A figure-eight arises from (a) by shrinking one boundary to a point; its
# letter records which face touches both loops: 1 -> b, 2 -> c, 3 -> d.
# A dumbbell (two loops joined by a bridge) leaves two faces with no common
# boundary; the face around the bridge selects 1 -> e, 2 -> f, 3 -> g, so
# (g) is the one where faces 1 and 2 do not touch.
def _backbone_tag(b: Backbone) -> str:
    m = b.map
    if m.n_faces != 3:
        return "other"
    loops = [h for h in range(m.n_half_edges) if m.vertex_of[h] == m.target(h)]
    if m.n_vertices == 1 and m.n_edges == 2:
        outer = set.intersection(*({b.face_index[h], b.face_index[m.alpha[h]]} for h in range(0, 4) if h < m.alpha[h]))
        return {1: "b", 2: "c", 3: "d"}.get(_only(outer), "other")
    if m.n_vertices == 2 and m.n_edges == 3:
        if not loops:
            return "a"
        bridge = [h for h in range(m.n_half_edges) if h not in loops]
        return {1: "e", 2: "f", 3: "g"}.get(b.face_index[bridge[0]], "other")
    return "other"


def _only(s: set):
    return next(iter(s)) if len(s) == 1 else None


def classify_backbone(lm: LabeledMap) -> str:
    """Backbone letter (a)-(g), or 'tree' / 'cycle' / 'other'."""
    return backbone(skeleton(lm)).tag
