"""A triply-pointed quadrangulation, its labeled map and back.

Draws a random quadrangulation, marks three vertices, encodes them as a
three-face labeled map, reports the backbone shape and checks that the
inverse construction restores the pairwise distances.

    python demos/bijection_round_trip.py
"""

import random

from threepoint.bijections import encode_triple, miermont_inverse, verify_constraints
from threepoint.gf import DistanceTriple, g_three
from threepoint.maps import bfs_distances
from threepoint.oracle import random_labeled_tree


def main():
    rng = random.Random(4)
    while True:
        q = miermont_inverse(random_labeled_tree(30, rng).to_labeled_map()).quad
        vs = rng.sample(range(q.n_vertices), 3)
        d1, d2 = bfs_distances(q, vs[0]), bfs_distances(q, vs[1])
        trip = DistanceTriple(d1[vs[1]], d2[vs[2]], d1[vs[2]])
        if not trip.aligned:
            break
    print(f"quadrangulation with {q.n_faces} faces, marked vertices {vs}, distances {tuple(trip)}, radii {trip.stu}")
    lm = encode_triple(q, vs)
    rep = verify_constraints(lm, "three", trip.stu)
    print(f"labeled map: {lm.map.n_edges} edges, {lm.map.n_faces} faces, constraints ok: {rep.passed}, backbone ({rep.backbone_type})")
    back = miermont_inverse(lm)
    a, b, c = back.sources
    da, db = bfs_distances(back.quad, a), bfs_distances(back.quad, b)
    print(f"distances after the round trip: {(da[b], db[c], da[c])}")
    print(f"maps with these distances, by number of faces: {[int(x) for x in g_three(trip, 10)]}")


if __name__ == "__main__":
    main()
