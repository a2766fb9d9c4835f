"""Geodesic points between two far-apart vertices.

Exact local-limit laws of the number of vertices at distance s from the
first point on geodesics to the second, next to a Monte Carlo estimate on
maps with 20000 faces.

    python demos/geodesic_points.py
"""

import numpy as np

from threepoint.geodesic import mean_profile_limit, p_inf, p_inf_far_terms, p_inf_terms
from threepoint.sampler import empirical_geodesic_counts, total_variation


def main():
    s_values = [1, 2, 5]
    for s in s_values:
        law = p_inf_terms(s)
        print(f"s={s}: exact mean {law.mean()} = {float(law.mean()):.4f}, p(1) = {law(1)}")
    print(f"far from both points: mean {p_inf_far_terms().mean()}")
    geo = empirical_geodesic_counts(s_values, d_min=20, n=20_000, samples=3000, seed=1, pairs_per_map=4)
    print(f"{geo.accepted} pairs at distance >= 20")
    for s in s_values:
        exact = np.array([0.0] + [float(p_inf(c, s)) for c in range(1, 60)])
        tv = total_variation(geo.pmf(s)[:-1], exact)
        print(f"s={s}: empirical mean {geo.mean(s):.3f} vs {float(mean_profile_limit(s)):.3f}, TV {tv:.4f}")


if __name__ == "__main__":
    main()
