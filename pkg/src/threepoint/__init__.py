"""Exact and asymptotic distance statistics of random planar quadrangulations.

Submodules:

- ``series``: truncated power series with exact rational coefficients
- ``gf``: generating functions of two- and three-point distances
- ``maps``: planar maps as half-edge permutations, skeletons, canonical forms
- ``bijections``: multi-source bijection between pointed quadrangulations and labeled maps
- ``oracle``: exhaustive enumeration at small sizes
- ``continuum``: scaling functions and distance densities in the large-size limit
- ``geodesic``: laws of the number of geodesic points in the local limit
- ``sampler``: uniform random quadrangulations and Monte Carlo estimators
"""

from .series import Series, SeriesError
from .gf import DistanceTriple, g_three, two_point, r_series, verify_identity_suite
from .maps import LabeledMap, MapError, PlanarMap
from .bijections import BijectionError, PointedQuadrangulation, miermont_forward, miermont_inverse

__version__ = "0.1.0"

__all__ = [
    "Series",
    "SeriesError",
    "DistanceTriple",
    "g_three",
    "two_point",
    "r_series",
    "verify_identity_suite",
    "PlanarMap",
    "LabeledMap",
    "MapError",
    "PointedQuadrangulation",
    "BijectionError",
    "miermont_forward",
    "miermont_inverse",
]
