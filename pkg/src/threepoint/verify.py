"""Verification suites shared by the command line and the acceptance tests.

Each suite returns a :class:`SuiteResult` carrying the first counterexample
found, if any.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field
from math import comb

from .bijections import (
    PointedQuadrangulation,
    delays_for_triple,
    encode_triple,
    labeled_canonical_form,
    miermont_forward,
    miermont_inverse,
    quad_canonical_form,
    verify_constraints,
)
from .gf import DistanceTriple, cross_method_suite, g_three, g_three_stu, two_point, verify_identity_suite
from .maps import bfs_distances
from .oracle import count_pairs, count_triples, random_labeled_tree

__all__ = [
    "SuiteResult",
    "series_suite",
    "oracle_suite",
    "bijection_suite",
    "three_point_total",
    "expected_total",
]


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    counterexample: str | None = None
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f": {self.counterexample}" if self.counterexample else ""
        return f"{status} {self.name} ({self.checks} checks, {self.seconds:.1f} s){tail}"


def series_suite(order: int, max_stu: int = 5, max_i: int = 10) -> SuiteResult:
    """All exact series identities at truncation ``order``."""
    t0 = time.perf_counter()
    reports = [cross_method_suite(order, max_i, max_stu), verify_identity_suite(order, max(1, max_stu))]
    results = [r for rep in reports for r in rep.results]
    bad = next((r for r in results if not r.passed), None)
    summary = {}
    for rep in reports:
        summary.update(rep.summary())
    return SuiteResult("series", bad is None, len(results), str(bad) if bad else None, time.perf_counter() - t0, summary)


def expected_total(n: int) -> int:
    """``(3^n / 2) C(2n, n)``: triply-pointed quadrangulations with n faces, all distance profiles."""
    return 3**n * comb(2 * n, n) // 2


def three_point_total(n: int) -> int:
    """Sum of the three-point coefficient at g^n over every valid radius triple."""
    total = 0
    r = range(0, n + 2)
    for s in r:
        for t in r:
            for u in r:
                if (s, t, u).count(0) <= 1:
                    total += g_three_stu(s, t, u, n)[n]
    if total.denominator != 1:
        raise ArithmeticError(f"non-integral total {total}")
    return int(total)


def oracle_suite(max_n: int = 4, series_total_n: int = 8) -> SuiteResult:
    """Enumeration against series: triples and pairs for n <= max_n, totals up to series_total_n."""
    t0 = time.perf_counter()
    checks = 0
    bad = None
    for n in range(1, max_n + 1):
        table = count_triples(n)
        total = 0
        for trip, k in table.items():
            checks += 1
            total += k
            want = g_three(trip, n)[n]
            if k != want and bad is None:
                bad = f"n={n} triple {tuple(trip)}: enumeration {k}, series {want}"
        # series coefficients absent from the enumeration must vanish
        for s in range(n + 2):
            for t in range(n + 2):
                for u in range(n + 2):
                    if (s, t, u).count(0) > 1:
                        continue
                    trip = DistanceTriple.from_stu(s, t, u)
                    if trip not in table:
                        checks += 1
                        c = g_three_stu(s, t, u, n)[n]
                        if c != 0 and bad is None:
                            bad = f"n={n} triple {tuple(trip)}: series {c}, none enumerated"
        checks += 1
        if total != expected_total(n) and bad is None:
            bad = f"n={n}: enumerated total {total}, expected {expected_total(n)}"
        for i, k in count_pairs(n).items():
            checks += 1
            want = two_point(i, n)[n]
            if k != want and bad is None:
                bad = f"n={n} distance {i}: enumeration {k}, series {want}"
    for n in range(1, series_total_n + 1):
        checks += 1
        got = three_point_total(n)
        if got != expected_total(n) and bad is None:
            bad = f"n={n}: series total {got}, expected {expected_total(n)}"
    return SuiteResult("oracle", bad is None, checks, bad, time.perf_counter() - t0)


def bijection_suite(instances: int = 1000, max_n: int = 50, seed: int = 0, triples: int | None = None) -> SuiteResult:
    """Random round trips of the bijection.

    ``instances`` single-source round trips (labeled tree -> quadrangulation
    -> labeled tree, compared up to isomorphism), then ``triples``
    non-aligned three-point instances (default: ``instances``): forward image
    checked against the label conditions and backbone types, inverse compared
    with the original, and pairwise source distances recovered.  Aligned
    draws are checked with the two-face encoding and do not count toward
    ``triples``.
    """
    t0 = time.perf_counter()
    triples = instances if triples is None else triples
    rng = random.Random(seed)
    backbones = Counter()
    aligned = 0
    checks = 0

    def done(msg):
        return SuiteResult("bijection", False, checks, msg, time.perf_counter() - t0, {"backbones": dict(backbones)})

    for _ in range(instances):
        n = rng.randint(1, max_n)
        tree = random_labeled_tree(n, rng)
        lm = tree.to_labeled_map()
        pq = miermont_inverse(lm)
        lm2 = miermont_forward(pq)
        checks += 1
        if labeled_canonical_form(lm2) != labeled_canonical_form(lm):
            return done(f"forward(inverse(tree)) differs from tree {tree.key()}")
        if quad_canonical_form(miermont_inverse(lm2)) != quad_canonical_form(pq):
            return done(f"inverse(forward(q)) differs from q for tree {tree.key()}")
        report = verify_constraints(lm2, "face_minima", pq.delays)
        if not report.passed:
            return done(f"tree {tree.key()}: {report.first_violation}")

    found = 0
    while found < triples:
        n = rng.randint(2, max_n)
        q = miermont_inverse(random_labeled_tree(n, rng).to_labeled_map()).quad
        vs = rng.sample(range(q.n_vertices), 3)
        d1, d2 = bfs_distances(q, vs[0]), bfs_distances(q, vs[1])
        trip = DistanceTriple(d1[vs[1]], d2[vs[2]], d1[vs[2]])
        lm = encode_triple(q, vs)
        checks += 1
        if trip.aligned:
            aligned += 1
            radii = [x for x in trip.stu if x != 0]
            report = verify_constraints(lm, "two", radii)
            if not report.passed:
                return done(f"aligned triple {tuple(trip)}: {report.first_violation}")
            continue
        found += 1
        report = verify_constraints(lm, "three", trip.stu)
        if not report.passed:
            return done(f"triple {tuple(trip)}: {report.first_violation}")
        backbones[report.backbone_type] += 1
        if report.backbone_type not in ("a", "b", "c", "d"):
            return done(f"triple {tuple(trip)}: backbone type {report.backbone_type}")
        pq3 = miermont_inverse(lm)
        a, b, c = pq3.sources
        da, db = bfs_distances(pq3.quad, a), bfs_distances(pq3.quad, b)
        if (da[b], db[c], da[c]) != tuple(trip):
            return done(f"triple {tuple(trip)} came back as {(da[b], db[c], da[c])}")
        original = PointedQuadrangulation(q, tuple(vs), delays_for_triple(trip))
        if quad_canonical_form(pq3) != quad_canonical_form(original):
            return done(f"inverse(forward) differs for triple {tuple(trip)}")
        if labeled_canonical_form(miermont_forward(pq3)) != labeled_canonical_form(lm):
            return done(f"forward(inverse) differs for triple {tuple(trip)}")
    details = {"backbones": dict(sorted(backbones.items())), "aligned": aligned}
    return SuiteResult("bijection", True, checks, None, time.perf_counter() - t0, details)
