"""Bijection between multi-pointed delayed quadrangulations and labeled maps.

Forward: label every vertex by ``min_j (tau_j + d(v, s_j))`` and, inside each
quadrangular face, draw one new edge according to the face's label pattern.
The sources are removed and each one ends up inside its own face of the new
map.  Inverse: inside each face of a labeled map, link every corner to the
next corner (counterclockwise) whose label is one less, or to a new central
vertex when the corner carries the face minimum.

Orientation conventions are those of :mod:`threepoint.maps`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .gf import DistanceTriple
from .maps import LabeledMap, MapError, PlanarMap, bfs_distances, canonical_form, classify_backbone, is_quadrangulation

__all__ = [
    "BijectionError",
    "PointedQuadrangulation",
    "label_vertices",
    "miermont_forward",
    "miermont_inverse",
    "delays_for_triple",
    "encode_triple",
    "ConstraintReport",
    "verify_constraints",
    "quad_canonical_form",
    "labeled_canonical_form",
]


class BijectionError(ValueError):
    """Input outside the domain of the bijection."""


@dataclass(frozen=True)
class PointedQuadrangulation:
    """A planar quadrangulation with ``p`` distinct sources and integer delays."""

    quad: PlanarMap
    sources: tuple[int, ...]
    delays: tuple[int, ...]

    def __post_init__(self):
        q = self.quad
        if not is_quadrangulation(q):
            raise BijectionError("not a quadrangulation")
        if len(self.sources) != len(self.delays) or not self.sources:
            raise BijectionError("need one delay per source and at least one source")
        if len(set(self.sources)) != len(self.sources):
            raise BijectionError("sources must be distinct")
        if any(not 0 <= s < q.n_vertices for s in self.sources):
            raise BijectionError("source out of range")
        dist = [bfs_distances(q, s) for s in self.sources]
        p = len(self.sources)
        for i in range(p):
            for j in range(i + 1, p):
                dij = dist[i][self.sources[j]]
                gap = abs(self.delays[i] - self.delays[j])
                if not gap < dij:
                    raise BijectionError(f"delays of sources {i + 1},{j + 1} differ by {gap}, distance is {dij}")
                if (dij + self.delays[i] - self.delays[j]) % 2:
                    raise BijectionError(f"distance plus delay difference is odd for sources {i + 1},{j + 1}")

    @property
    def p(self) -> int:
        return len(self.sources)


def label_vertices(pq: PointedQuadrangulation) -> list[int]:
    """``l(v) = min_j (tau_j + d(v, s_j))``."""
    q = pq.quad
    labels = [None] * q.n_vertices
    for s, tau in zip(pq.sources, pq.delays):
        for v, d in enumerate(bfs_distances(q, s)):
            if labels[v] is None or tau + d < labels[v]:
                labels[v] = tau + d
    return labels


def miermont_forward(pq: PointedQuadrangulation) -> LabeledMap:
    """Map a delayed multi-pointed quadrangulation to a labeled map with p faces.

    ``origin`` on the result gives the quadrangulation vertex of every vertex.
    """
    q = pq.quad
    labels = label_vertices(pq)
    sources = set(pq.sources)
    lab = [labels[v] for v in q.vertex_of]  # label at origin of each half-edge
    # new half-edge placed at the corner of quad half-edge h, if any
    at_corner = [-1] * q.n_half_edges
    chord = {}  # face -> (corner position a, corner position b, new half-edge at a, at b)
    n_new = 0
    for f, cyc in enumerate(q.faces):
        ls = [lab[h] for h in cyc]
        lo = min(ls)
        if any(abs(ls[i] - ls[(i + 1) % 4]) != 1 for i in range(4)):
            raise BijectionError(f"labels around face {f} are not a +-1 cycle: {ls}")
        if max(ls) == lo + 2:
            k = ls.index(lo + 2)
            a, b = (k - 1) % 4, k
        else:
            a = ls.index(lo + 1)
            b = a + 2
        at_corner[cyc[a]] = n_new
        at_corner[cyc[b]] = n_new + 1
        chord[f] = (a, b, n_new, n_new + 1)
        n_new += 2
    alpha = [h ^ 1 for h in range(n_new)]
    sigma = [0] * n_new
    for v, around in enumerate(q.vertices):
        if v in sources:
            continue
        new = [at_corner[h] for h in around if at_corner[h] >= 0]
        if not new:
            raise BijectionError(f"vertex {v} receives no edge")
        for i, h in enumerate(new):
            sigma[h] = new[(i + 1) % len(new)]
    try:
        m = PlanarMap(sigma, alpha)
    except MapError as exc:
        raise BijectionError(f"forward construction failed: {exc}") from exc
    qv_of_new = [0] * n_new
    for h in range(q.n_half_edges):
        if at_corner[h] >= 0:
            qv_of_new[at_corner[h]] = q.vertex_of[h]
    origin = tuple(qv_of_new[c[0]] for c in m.vertices)
    face_order = []
    for s in pq.sources:
        h = q.vertices[s][0]
        f = q.face_of[h]
        cyc = q.faces[f]
        j = cyc.index(h)
        a, b, ha, hb = chord[f]
        # corners strictly between a and b (ccw) lie right of a->b, i.e. left of b->a
        side = hb if 0 < (j - a) % 4 < (b - a) % 4 else ha
        face_order.append(m.face_of[side])
    if len(set(face_order)) != len(face_order):
        raise BijectionError("two sources landed in the same face")
    return LabeledMap(m, tuple(labels[v] for v in origin), tuple(face_order), origin=origin)


def miermont_inverse(lm: LabeledMap, delays: Sequence[int] | None = None) -> PointedQuadrangulation:
    """Rebuild the delayed quadrangulation; sources are the new central vertices.

    Delays default to ``min label of face i - 1``; if given they must match.
    """
    m = lm.map
    p = len(lm.face_order)
    if p != m.n_faces:
        raise BijectionError(f"every face must be distinguished ({m.n_faces} faces, {p} listed)")
    labels = lm.labels
    taus = tuple(lm.face_min(f) - 1 for f in lm.face_order)
    if delays is not None and tuple(delays) != taus:
        raise BijectionError(f"delays {tuple(delays)} do not match face minima, expected {taus}")
    n_arch = m.n_half_edges
    # quad half-edges: 2c = tail of arch from corner c, 2c+1 = head
    arches_at = [[] for _ in range(n_arch)]  # corner -> list of (offset, quad half-edge)
    center_rot = []
    for i, f in enumerate(lm.face_order):
        cyc = m.faces[f]
        K = len(cyc)
        ls = [labels[m.vertex_of[h]] for h in cyc]
        lo = min(ls)
        nxt = {}
        succ = [None] * K
        for idx in range(2 * K - 1, -1, -1):
            pos = idx % K
            if idx < K and ls[pos] > lo:
                succ[pos] = nxt[ls[pos] - 1] % K
            nxt[ls[pos]] = idx
        rot = []
        for pos, c in enumerate(cyc):
            if succ[pos] is None:
                arches_at[c].append((0, 2 * c))
                rot.append(2 * c + 1)
            else:
                d = cyc[succ[pos]]
                off = (succ[pos] - pos) % K
                arches_at[c].append((off, 2 * c))
                arches_at[d].append(((pos - succ[pos]) % K, 2 * c + 1))
        center_rot.append(rot)
    sigma = [0] * (2 * n_arch)
    alpha = [h ^ 1 for h in range(2 * n_arch)]
    for v, around in enumerate(m.vertices):
        seq = []
        for h in around:
            seq.extend(e for _, e in sorted(arches_at[h]))
        for i, e in enumerate(seq):
            sigma[e] = seq[(i + 1) % len(seq)]
    for rot in center_rot:
        for i, e in enumerate(rot):
            sigma[e] = rot[(i + 1) % len(rot)]
    try:
        q = PlanarMap(sigma, alpha)
    except MapError as exc:
        raise BijectionError(f"inverse construction failed: {exc}") from exc
    sources = tuple(q.vertex_of[rot[0]] for rot in center_rot)
    return PointedQuadrangulation(q, sources, taus)


def delays_for_triple(d: DistanceTriple) -> tuple[int, int, int]:
    """Delays ``(-s, -t, -u)`` turning pairwise distances into face-minimum constraints."""
    if d.aligned:
        raise BijectionError("aligned triple: one vertex lies on a geodesic between the others; use the two-source encoding")
    s, t, u = d.stu
    return (-s, -t, -u)


def encode_triple(q: PlanarMap, vertices: Sequence[int]) -> LabeledMap:
    """Labeled map associated with three marked vertices of a quadrangulation.

    Non-aligned triples give a three-face map.  For an aligned triple the
    middle vertex (zero radius) becomes a marked vertex of a two-face map
    built from the other two with delays equal to minus their radii.
    """
    v1, v2, v3 = vertices
    d1, d2 = bfs_distances(q, v1), bfs_distances(q, v2)
    trip = DistanceTriple(d1[v2], d2[v3], d1[v3])
    stu = trip.stu
    if not trip.aligned:
        pq = PointedQuadrangulation(q, (v1, v2, v3), delays_for_triple(trip))
        return miermont_forward(pq)
    mid = stu.index(0)
    ends = [vertices[k] for k in range(3) if k != mid]
    pq = PointedQuadrangulation(q, tuple(ends), tuple(-stu[k] for k in range(3) if k != mid))
    lm = miermont_forward(pq)
    mark = lm.origin.index(vertices[mid])
    return LabeledMap(lm.map, lm.labels, lm.face_order, mark, lm.origin)


@dataclass(frozen=True)
class ConstraintReport:
    passed: bool
    first_violation: str | None
    backbone_type: str | None


def verify_constraints(lm: LabeledMap, mode: str, params: Sequence[int]) -> ConstraintReport:
    """Check the label conditions a labeled map must satisfy.

    ``mode='face_minima'``, ``params`` = delays: face i has minimum label
    ``tau_i + 1``.
    ``mode='three'``, ``params = (s, t, u)``: three faces with minima
    ``1-s, 1-t, 1-u``, and the vertices shared by any two faces have minimum
    label exactly 0 (so every pair of faces shares a boundary).
    ``mode='two'``, ``params = (s, t)``: two faces with minima ``1-s, 1-t``,
    boundary minimum 0, and a marked boundary vertex with label 0.
    """
    m = lm.map

    def fail(msg):
        return ConstraintReport(False, msg, None)

    def check_minima(mins):
        if len(lm.face_order) != len(mins) or m.n_faces != len(mins):
            return f"expected {len(mins)} distinguished faces, found {len(lm.face_order)} of {m.n_faces}"
        for i, (f, want) in enumerate(zip(lm.face_order, mins)):
            if lm.face_min(f) != want:
                return f"face {i + 1} minimum is {lm.face_min(f)}, required {want}"
        return None

    def check_boundaries():
        verts = [lm.vertices_of_face(f) for f in lm.face_order]
        k = len(verts)
        for i in range(k):
            for j in range(i + 1, k):
                shared = verts[i] & verts[j]
                if not shared:
                    return f"faces {i + 1},{j + 1} share no boundary"
                lo = min(lm.labels[v] for v in shared)
                if lo != 0:
                    return f"boundary of faces {i + 1},{j + 1} has minimum label {lo}, required 0"
        return None

    if mode == "face_minima":
        msg = check_minima([tau + 1 for tau in params])
        return fail(msg) if msg else ConstraintReport(True, None, None)
    if mode == "three":
        s, t, u = params
        msg = check_minima([1 - s, 1 - t, 1 - u]) or check_boundaries()
        return fail(msg) if msg else ConstraintReport(True, None, classify_backbone(lm))
    if mode == "two":
        s, t = params
        msg = check_minima([1 - s, 1 - t]) or check_boundaries()
        if msg:
            return fail(msg)
        v = lm.marked_vertex
        if v is None:
            return fail("no marked vertex")
        if lm.labels[v] != 0:
            return fail(f"marked vertex has label {lm.labels[v]}, required 0")
        f1, f2 = lm.face_order
        if v not in lm.vertices_of_face(f1) & lm.vertices_of_face(f2):
            return fail("marked vertex is not on the boundary between the two faces")
        return ConstraintReport(True, None, classify_backbone(lm))
    raise ValueError(f"unknown mode {mode!r}")


def quad_canonical_form(pq: PointedQuadrangulation) -> bytes:
    """Isomorphism-invariant code of a quadrangulation with ordered sources and delays."""
    q = pq.quad
    mark = [0] * q.n_vertices
    for i, s in enumerate(pq.sources):
        mark[s] = -(i + 1)
    labels = label_vertices(pq)
    data = [(mark[v], labels[v]) for v in range(q.n_vertices)]
    return canonical_form(q, data, roots=q.vertices[pq.sources[0]])


def labeled_canonical_form(lm: LabeledMap) -> bytes:
    """Isomorphism-invariant code of a labeled map with its distinguished faces."""
    m = lm.map
    he = [lm.face_index(h) for h in range(m.n_half_edges)]
    vdata = list(lm.labels)
    if lm.marked_vertex is not None:
        vdata = [(x, v == lm.marked_vertex) for v, x in enumerate(lm.labels)]
    if lm.face_order:
        f1 = lm.face_order[0]
        lo = lm.face_min(f1)
        roots = [h for h in m.faces[f1] if lm.labels[m.vertex_of[h]] == lo]
    else:
        roots = None
    return canonical_form(m, vdata, he, roots=roots)
