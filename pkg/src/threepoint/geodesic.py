"""Geodesic points in the local limit (distances fixed, size to infinity).

A geodesic point at distance ``s`` between two marked vertices at distance
``d = s + t`` is a vertex at distance ``s`` from the first and ``t`` from the
second.  Everything here is exact rational arithmetic, including the infinite
sums over the count ``c``: each probability family is a finite combination of
geometric sequences, summed in closed form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from .gf import delta_st_x, two_point

__all__ = [
    "GeodesicError",
    "Geometric",
    "f_local",
    "f_local_u0",
    "n_d",
    "geodesic_profile",
    "a_st",
    "p_geodesic",
    "p_geodesic_terms",
    "p_inf",
    "p_inf_terms",
    "p_inf_far",
    "p_inf_far_terms",
    "total_and_mean",
    "mean_profile_limit",
    "large_t_ratio",
    "p_finite_n",
]


class GeodesicError(ValueError):
    """Argument outside the domain of a local-limit formula."""


def _nonneg(*xs):
    for x in xs:
        if not isinstance(x, int) or x < 0:
            raise GeodesicError(f"expected nonnegative integers, got {xs}")


def f_local(s: int, t: int, u: int) -> Fraction:
    """Closed form whose triple difference is the mean number of vertex couples
    at distances (s, t, u) in the local limit."""
    _nonneg(s, t, u)
    s, t, u = Fraction(s), Fraction(t), Fraction(u)
    lead = ((1 + s) * (1 + t) * (1 + u) * (3 + s + t + u)) ** 2
    den = (1 + s + t) * (3 + s + t) * (1 + t + u) * (3 + t + u) * (1 + u + s) * (3 + u + s)
    quad = 29 + 20 * (s + t + u) + 5 * (s * s + t * t + u * u + s * t + t * u + u * s)
    tail = (s * t + t * u + u * s + s * t * u) * (4 + s + t + u) - s * t * u
    return Fraction(9, 140) * lead / den * quad * tail


def f_local_u0(s: int, t: int) -> Fraction:
    """The ``u = 0`` reduction of :func:`f_local`, written independently."""
    _nonneg(s, t)
    s, t = Fraction(s), Fraction(t)
    return (
        Fraction(9, 140)
        * (1 + s) * (1 + t) * (3 + s + t) / ((3 + s) * (3 + t) * (1 + s + t))
        * s * t * (29 + 20 * (s + t) + 5 * (s * s + t * t + s * t)) * (4 + s + t)
    )


def _dd(fn: Callable[[int, int], Fraction], s: int, t: int) -> Fraction:
    return fn(s, t) - fn(s - 1, t) - fn(s, t - 1) + fn(s - 1, t - 1)


def n_d(d: int) -> Fraction:
    """Mean number of vertices at distance ``d`` from a vertex, ``(3/35)(d+1)(5d^2+10d+2)``."""
    if d < 1:
        raise GeodesicError("distance must be positive")
    return Fraction(3, 35) * (d + 1) * (5 * d * d + 10 * d + 2)


def geodesic_profile(s: int, d: int) -> Fraction:
    """Mean number of geodesic points at distance ``s`` between vertices at distance ``d``."""
    if not 1 <= s <= d - 1:
        raise GeodesicError(f"need 1 <= s <= d-1, got s={s}, d={d}")
    return _dd(f_local_u0, s, d - s) / n_d(d)


def mean_profile_limit(s: int) -> Fraction:
    """``d -> infinity`` limit of the profile: ``3 s (5+s) / ((3+s)(2+s))``."""
    return Fraction(3 * s * (5 + s), (3 + s) * (2 + s))


def large_t_ratio(s: int, t: int) -> float:
    """``DD f(s,t,0) / t^3`` divided by its limit ``(9/7) s(5+s)/((3+s)(2+s))``."""
    return float(_dd(f_local_u0, s, t) / Fraction(t) ** 3 / (Fraction(9, 7) * Fraction(s * (5 + s), (3 + s) * (2 + s))))


def a_st(s: int, t: int) -> Fraction:
    """``3 (s+1)(t+1)(s+t+3) / ((s+3)(t+3)(s+t+1))``."""
    _nonneg(s, t)
    return Fraction(3 * (s + 1) * (t + 1) * (s + t + 3), (s + 3) * (t + 3) * (s + t + 1))


class Geometric:
    """``sum_k coef_k * ratio_k^c`` for ``c >= 1``: a pmf written as geometric terms."""

    def __init__(self, terms: Iterable[tuple[Fraction, Fraction]]):
        self.terms = [(Fraction(a), Fraction(r)) for a, r in terms if a != 0]
        for _, r in self.terms:
            if not abs(r) < 1:
                raise GeodesicError(f"ratio {r} does not give a convergent sum")

    def __call__(self, c: int) -> Fraction:
        return sum((a * r**c for a, r in self.terms), Fraction(0))

    def total(self) -> Fraction:
        """``sum_{c>=1}``, exactly."""
        return sum((a * r / (1 - r) for a, r in self.terms), Fraction(0))

    def mean(self) -> Fraction:
        """``sum_{c>=1} c p(c)``, exactly."""
        return sum((a * r / (1 - r) ** 2 for a, r in self.terms), Fraction(0))

    def tail(self, c: int) -> Fraction:
        """``sum_{k > c}``."""
        return sum((a * r ** (c + 1) / (1 - r) for a, r in self.terms), Fraction(0))


def p_geodesic_terms(s: int, t: int) -> Geometric:
    """Law of the number of geodesic points at distance s, sources at distance s+t.

    ``p(c) = (1/N_{s+t}) DD[ f(s,t,0)/A^2 ((A-1)/A)^{c-1} ]``, the double
    difference acting on s and t; each of the four corners is a geometric
    sequence in c.
    """
    if s < 1 or t < 1:
        raise GeodesicError("need s, t >= 1")
    norm = n_d(s + t)
    terms = []
    for ds, dt, sign in ((0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1)):
        ss, tt = s - ds, t - dt
        A = a_st(ss, tt)
        r = (A - 1) / A
        if r == 0:
            continue
        # f/A^2 r^{c-1} = (f / (A^2 r)) r^c
        terms.append((sign * f_local_u0(ss, tt) / (A * A * r) / norm, r))
    return Geometric(terms)


def p_geodesic(c: int, s: int, t: int) -> Fraction:
    if c < 1:
        raise GeodesicError("c must be positive")
    return p_geodesic_terms(s, t)(c)


def p_inf_terms(s: int) -> Geometric:
    """``((s+3)/2) (2s/(3(s+1)))^c - ((s+2)/2) (2(s-1)/(3s))^c``."""
    if s < 1:
        raise GeodesicError("s must be positive")
    return Geometric([(Fraction(s + 3, 2), Fraction(2 * s, 3 * (s + 1))), (Fraction(-(s + 2), 2), Fraction(2 * (s - 1), 3 * s))])


def p_inf(c: int, s: int) -> Fraction:
    if c < 1:
        raise GeodesicError("c must be positive")
    return p_inf_terms(s)(c)


def p_inf_far_terms() -> Geometric:
    return Geometric([(Fraction(1, 2), Fraction(2, 3))])


def p_inf_far(c: int) -> Fraction:
    if c < 1:
        raise GeodesicError("c must be positive")
    return p_inf_far_terms()(c)


def total_and_mean(law: Geometric) -> tuple[Fraction, Fraction]:
    return law.total(), law.mean()


def p_finite_n(c: int, s: int, t: int, n: int) -> Fraction:
    """Exact law at size ``n``: ``DD X^(c)|g^n / log(R_{s+t}/R_{s+t-1})|g^n``."""
    if c < 1 or s < 1 or t < 1 or n < 1:
        raise GeodesicError("need c, s, t, n >= 1")
    num = delta_st_x(s, t, n, c)[n]
    d = s + t
    den = two_point(d, n)[n]
    if den == 0:
        raise GeodesicError(f"no pair of vertices at distance {d} in quadrangulations with {n} faces")
    return num / den
