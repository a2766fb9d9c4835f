"""Distance between two uniform vertices of a large random quadrangulation.

Samples maps with n faces, rescales the distance by n^(1/4) and compares the
empirical law with the continuum distribution, for growing n.  The lattice
centering (d + 3/2) / n^(1/4) removes the leading finite-size offset.

    python demos/two_point_scaling.py
"""

import numpy as np

from threepoint.continuum import gauss_legendre, integrate_rho2, phi2, rho2
from threepoint.sampler import empirical_two_point, ks_two_point


def main():
    print(f"int rho2 = {integrate_rho2():.10f}")
    D = np.linspace(0.5, 3.0, 251)
    print(f"mode of rho2 at D = {D[np.argmax(rho2(D))]:.3f}")
    print(f"{'n':>7} {'KS centered':>12} {'KS plain':>10} {'mean (d+1)/n^1/4':>18}")
    x, w = gauss_legendre(0.0, 10.0, 200)
    mean_exact = float(np.dot(x * rho2(x), w))
    for n in (256, 1024, 4096, 16384):
        d = empirical_two_point(n, 50_000, seed=n)
        ks = ks_two_point(d, n, phi2)
        ks_plain = ks_two_point(d, n, phi2, offset=0.5)
        mean = float(np.mean((d + 1) / n**0.25))
        print(f"{n:>7} {ks:>12.4f} {ks_plain:>10.4f} {mean:>18.4f}")
    print(f"continuum mean {mean_exact:.4f}")


if __name__ == "__main__":
    main()
