"""Discrete generating functions for pointed quadrangulations.

Every function here returns a :class:`~threepoint.series.Series` truncated at
order ``N``.  The tree, chain and Y-diagram series are available through more
than one independent route (``method=...``) so they can be checked against
each other; :func:`verify_identity_suite` bundles those cross-checks.

Distances and the tangent-circle radii are related by::

    d12 = s + t,   d23 = t + u,   d31 = u + s
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .series import Series, bracket, log_series, solve_R, solve_x

__all__ = [
    "DistanceTriple",
    "r_series",
    "two_point",
    "x_series",
    "y_series",
    "x_tilde",
    "f_three",
    "f_three_closed",
    "g_three",
    "g_three_stu",
    "f_inverse_sum_check",
    "x_c",
    "delta_st_x",
    "four_point_restricted",
    "delta4_four_point",
    "verify_identity_suite",
    "cross_method_suite",
    "IdentityReport",
    "CheckResult",
]


@dataclass(frozen=True)
class DistanceTriple:
    """Pairwise distances between three marked vertices.

    Zero entries are accepted only for the degenerate conventions where two
    of the marked vertices coincide.
    """

    d12: int
    d23: int
    d31: int

    def __post_init__(self):
        d = (self.d12, self.d23, self.d31)
        if any(int(v) != v or v < 0 for v in d):
            raise ValueError(f"distances must be nonnegative integers, got {d}")
        if sum(d) % 2:
            raise ValueError(f"d12+d23+d31 must be even, got {d}")
        a, b, c = d
        if a > b + c or b > c + a or c > a + b:
            raise ValueError(f"triangle inequality violated by {d}")

    @classmethod
    def from_stu(cls, s: int, t: int, u: int) -> "DistanceTriple":
        return cls(s + t, t + u, u + s)

    @property
    def stu(self) -> tuple[int, int, int]:
        s = (self.d12 - self.d23 + self.d31) // 2
        t = (self.d12 + self.d23 - self.d31) // 2
        u = (-self.d12 + self.d23 + self.d31) // 2
        return s, t, u

    @property
    def aligned(self) -> bool:
        return 0 in self.stu

    @property
    def degenerate(self) -> bool:
        """Two of the marked vertices coincide."""
        return self.stu.count(0) >= 2

    def __iter__(self):
        return iter((self.d12, self.d23, self.d31))


def _check_order(N: int):
    if N < 0:
        raise ValueError("order must be nonnegative")


# -- well-labeled trees ------------------------------------------------------


@lru_cache(maxsize=None)
def _r_closed(i: int, N: int) -> Series:
    if i <= 0:
        return Series.constant(0, N)
    return solve_R(N) * bracket(i, N) * bracket(i + 3, N) / (bracket(i + 1, N) * bracket(i + 2, N))


@lru_cache(maxsize=None)
def _r_recursive_table(imax: int, N: int) -> tuple[tuple[Fraction, ...], ...]:
    """Coefficients of R_1..R_imax from ``R_i = 1 + g (R_{i-1}+R_i+R_{i+1}) R_i``.

    The g^k coefficient of R_j only needs order < k data from R_{j-1..j+1},
    so layer k is computed for j <= imax + N - k.
    """
    top = imax + N
    # c[j][k]; c[0] stays identically zero, c[top+1] is only read at order 0
    c = [[Fraction(0)] * (N + 1) for _ in range(top + 2)]
    for j in range(1, top + 2):
        c[j][0] = Fraction(1)
    for k in range(1, N + 1):
        for j in range(1, top - k + 1):
            acc = Fraction(0)
            for a in range(k):
                sa = c[j - 1][a] + c[j][a] + c[j + 1][a]
                if sa:
                    acc += sa * c[j][k - 1 - a]
            c[j][k] = acc
    return tuple(tuple(c[j]) for j in range(imax + 1))


def r_series(i: int, N: int, method: str = "closed") -> Series:
    """Generating function R_i of well-labeled trees planted at label i, labels >= 1."""
    if i <= 0:
        raise ValueError(f"R_i is defined here for i >= 1, got {i}")
    _check_order(N)
    if method == "closed":
        return _r_closed(i, N)
    if method == "recursive":
        return Series(_r_recursive_table(i, N)[i])
    raise ValueError(f"unknown method {method!r}")


def _R(i: int, N: int, method: str = "closed") -> Series:
    """R_i with the convention R_i = 0 for i <= 0."""
    if i <= 0:
        return Series.constant(0, N)
    return r_series(i, N, method)


@lru_cache(maxsize=None)
def two_point(i: int, N: int) -> Series:
    """Symmetry-weighted doubly-pointed quadrangulations at distance i."""
    if i <= 0:
        raise ValueError(f"distance must be >= 1, got {i}")
    _check_order(N)
    if i == 1:
        return log_series(_R(1, N))
    return log_series(_R(i, N) / _R(i - 1, N))


# -- chains: weighted Motzkin paths ------------------------------------------


@lru_cache(maxsize=None)
def _x_closed(s: int, t: int, N: int) -> Series:
    b = lambda k: bracket(k, N)  # noqa: E731
    return b(3) * b(s + 1) * b(t + 1) * b(s + t + 3) / (b(1) * b(s + 3) * b(t + 3) * b(s + t + 1))


@lru_cache(maxsize=None)
def _x_recursive_chain(s: int, t: int, N: int) -> tuple[Series, ...]:
    """X_{s+j,t+j} for j = 0..J, solved backwards from the first-step decomposition.

    X = 1 + w X (1 + w' X') with w = g R_s R_t is linear in X, so
    X = 1 / (1 - w - w w' X').  X' enters X at order >= 2, so starting the
    chain at depth J > N/2 with any value is exact up to order N.
    """
    J = N // 2 + 1
    w = [(_R(s + j, N, "recursive") * _R(t + j, N, "recursive")).shift(1) for j in range(J + 1)]
    chain = [Series.constant(1, N)] * (J + 1)
    for j in range(J - 1, -1, -1):
        chain[j] = (1 - w[j] - w[j] * w[j + 1] * chain[j + 1]).inverse()
    return tuple(chain)


@lru_cache(maxsize=None)
def _x_path_sum(s: int, t: int, N: int) -> Series:
    """Sum over Motzkin paths of length <= N of prod g R_{l+s} R_{l+t}.

    Transfer over heights: ``paths[h]`` accumulates the weight of all path
    prefixes currently at height h.  A path of length m carries g^m.
    """
    hmax = N // 2 + 1
    step = [(_R(h + s, N, "closed") * _R(h + t, N, "closed")).shift(1) for h in range(hmax + 1)]
    zero = Series.constant(0, N)
    paths = [Series.constant(1, N)] + [zero] * hmax
    total = paths[0]
    for m in range(1, N + 1):
        new = [zero] * (hmax + 1)
        for h in range(hmax + 1):
            if paths[h] == 0:
                continue
            contrib = paths[h] * step[h]
            for dh in (-1, 0, 1):
                h2 = h + dh
                # a path of length <= N must return to 0 within the remaining steps
                if 0 <= h2 <= hmax and h2 <= N - m:
                    new[h2] = new[h2] + contrib
        paths = new
        total = total + paths[0]
    return total


def x_series(s: int, t: int, N: int, method: str = "closed") -> Series:
    """Chains of well-labeled trees with labels > -s on one side and > -t on the other."""
    if s < 0 or t < 0:
        raise ValueError(f"X_(s,t) needs s, t >= 0, got ({s}, {t})")
    _check_order(N)
    if method == "closed":
        return _x_closed(s, t, N)
    if method == "recursive":
        return _x_recursive_chain(s, t, N)[0]
    if method == "path_sum":
        return _x_path_sum(s, t, N)
    raise ValueError(f"unknown method {method!r}")


# -- Y-diagrams --------------------------------------------------------------


@lru_cache(maxsize=None)
def _y_closed(s: int, t: int, u: int, N: int) -> Series:
    b = lambda k: bracket(k, N)  # noqa: E731
    num = b(s + 3) * b(t + 3) * b(u + 3) * b(s + t + u + 3)
    den = b(3) * b(s + t + 3) * b(t + u + 3) * b(u + s + 3)
    return num / den


@lru_cache(maxsize=None)
def _y_recursive_chain(s: int, t: int, u: int, N: int) -> tuple[Series, ...]:
    """Y_{s+j,t+j,u+j} solved backwards; each level carries a factor g^3."""
    J = N // 3 + 1
    chain = [Series.constant(1, N)] * (J + 1)
    for j in range(J - 1, -1, -1):
        a, b, c = s + j, t + j, u + j
        R = lambda i: _R(i, N, "recursive")  # noqa: E731
        X = lambda p, q: x_series(p, q, N, "recursive")  # noqa: E731
        w = R(a) * R(a + 1) * R(b) * R(b + 1) * R(c) * R(c + 1)
        w = w * X(a + 1, b + 1) * X(b + 1, c + 1) * X(c + 1, a + 1)
        chain[j] = 1 + (w * chain[j + 1]).shift(3)
    return tuple(chain)


@lru_cache(maxsize=None)
def x_tilde(l: int, s: int, t: int, N: int) -> Series:
    """Branch of a Y-diagram from a centre with label l down to its label-0 end."""
    if l == 0:
        return Series.constant(1, N)
    if l > N:
        return Series.constant(0, N)
    b = lambda k: bracket(k, N)  # noqa: E731
    num = b(s + 1) * b(s + 2) * b(t) * b(t + 3) * b(2 * l + s + t + 3)
    den = b(s + t + 3) * b(l + s + 1) * b(l + s + 2) * b(l + t) * b(l + t + 3)
    return solve_x(N) ** l * num / den


@lru_cache(maxsize=None)
def _y_sum_form(s: int, t: int, u: int, N: int) -> Series:
    total = Series.constant(0, N)
    for l in range(N + 1):
        total = total + x_tilde(l, s, t, N) * x_tilde(l, t, u, N) * x_tilde(l, u, s, N)
    return total


def y_series(s: int, t: int, u: int, N: int, method: str = "closed") -> Series:
    """Y-diagrams: three branches joined at a centre, label constraints -s, -t, -u."""
    if min(s, t, u) < 0:
        raise ValueError(f"Y_(s,t,u) needs nonnegative arguments, got ({s}, {t}, {u})")
    _check_order(N)
    if method == "closed":
        return _y_closed(s, t, u, N)
    if method == "recursive":
        return _y_recursive_chain(s, t, u, N)[0]
    if method == "sum_form":
        return _y_sum_form(s, t, u, N)
    raise ValueError(f"unknown method {method!r}")


# -- three-point function ----------------------------------------------------


@lru_cache(maxsize=None)
def f_three_closed(s: int, t: int, u: int, N: int) -> Series:
    if -1 in (s, t, u):
        return Series.constant(0, N)
    b = lambda k: bracket(k, N)  # noqa: E731
    num = b(3) * (b(s + 1) * b(t + 1) * b(u + 1) * b(s + t + u + 3)) ** 2
    den = b(1) ** 3 * b(s + t + 1) * b(s + t + 3) * b(t + u + 1) * b(t + u + 3) * b(u + s + 1) * b(u + s + 3)
    return num / den


@lru_cache(maxsize=None)
def f_three(s: int, t: int, u: int, N: int) -> Series:
    """F(s,t,u) = X_{s,t} X_{t,u} X_{u,s} Y_{s,t,u}^2; zero if any argument is -1."""
    if min(s, t, u) < -1:
        raise ValueError(f"F(s,t,u) is defined for arguments >= -1, got ({s}, {t}, {u})")
    _check_order(N)
    if -1 in (s, t, u):
        return Series.constant(0, N)
    y = y_series(s, t, u, N)
    return x_series(s, t, N) * x_series(t, u, N) * x_series(u, s, N) * y * y


def _box_difference(fn, args: tuple[int, ...]) -> Series:
    """Apply the backward difference in every argument of ``fn``."""
    total = None
    for shifts in itertools.product((0, 1), repeat=len(args)):
        term = fn(*(a - d for a, d in zip(args, shifts)))
        total = term if total is None else (total - term if sum(shifts) % 2 else total + term)
    return total


@lru_cache(maxsize=None)
def g_three_stu(s: int, t: int, u: int, N: int) -> Series:
    """Three-point function in radius coordinates, including degenerate conventions."""
    if min(s, t, u) < 0:
        raise ValueError(f"radii must be nonnegative, got ({s}, {t}, {u})")
    zeros = (s, t, u).count(0)
    if zeros == 3:
        return Series.constant(1, N)
    if zeros == 2:
        return Series.constant(0, N)
    return _box_difference(lambda a, b, c: f_three(a, b, c, N), (s, t, u))


def g_three(d, N: int) -> Series:
    """Triply-pointed quadrangulations with prescribed pairwise distances.

    ``d`` is a :class:`DistanceTriple` or a ``(d12, d23, d31)`` tuple; invalid
    triples raise instead of returning zero.
    """
    if not isinstance(d, DistanceTriple):
        d = DistanceTriple(*d)
    _check_order(N)
    return g_three_stu(*d.stu, N)


@dataclass
class CheckResult:
    name: str
    params: tuple
    passed: bool
    first_bad_coefficient: int | None = None
    detail: str = ""

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        extra = f" first mismatch at g^{self.first_bad_coefficient}" if self.first_bad_coefficient is not None else ""
        return f"[{status}] {self.name}{self.params}{extra} {self.detail}".rstrip()


def f_inverse_sum_check(s: int, t: int, u: int, N: int) -> CheckResult:
    """F(s,t,u) against the box sum of G over s'<=s, t'<=t, u'<=u."""
    total = Series.constant(0, N)
    for a in range(s + 1):
        for b in range(t + 1):
            for c in range(u + 1):
                total = total + g_three_stu(a, b, c, N)
    lhs = f_three(s, t, u, N)
    bad = lhs.first_difference(total)
    return CheckResult("invrel", (s, t, u, N), bad is None, bad)


# -- geodesic-point counting -------------------------------------------------


@lru_cache(maxsize=None)
def x_c(s: int, t: int, c: int, N: int) -> Series:
    """Two-face maps whose boundary carries exactly c label-0 vertices: ((X-1)/X)^c / c."""
    if c <= 0:
        raise ValueError(f"c must be >= 1, got {c}")
    X = x_series(s, t, N)
    return ((X - 1) / X) ** c / c


def delta_st_x(s: int, t: int, N: int, c: int | None = None) -> Series:
    """Delta_s Delta_t X_{s,t}, or of X^(c) when c is given (X_{-1,.} = 0)."""

    def X(a, b):
        if a < 0 or b < 0:
            return Series.constant(0, N)
        return x_series(a, b, N) if c is None else x_c(a, b, c, N)

    return _box_difference(X, (s, t))


# -- four points at tangent-sphere distances ----------------------------------


@lru_cache(maxsize=None)
def four_point_restricted(s: int, t: int, u: int, v: int, N: int) -> Series:
    """F(s,t,u,v): product of the six chains and four Y-diagrams."""
    if min(s, t, u, v) < -1:
        raise ValueError(f"arguments must be >= -1, got ({s}, {t}, {u}, {v})")
    _check_order(N)
    if -1 in (s, t, u, v):
        return Series.constant(0, N)
    out = Series.constant(1, N)
    for a, b in itertools.combinations((s, t, u, v), 2):
        out = out * x_series(a, b, N)
    for a, b, c in itertools.combinations((s, t, u, v), 3):
        out = out * y_series(a, b, c, N)
    return out


def delta4_four_point(s: int, t: int, u: int, v: int, N: int) -> Series:
    return _box_difference(lambda a, b, c, d: four_point_restricted(a, b, c, d, N), (s, t, u, v))


# -- identity suite ------------------------------------------------------------


@dataclass
class IdentityReport:
    order: int
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def summary(self) -> dict[str, tuple[int, int]]:
        out: dict[str, list[int]] = {}
        for r in self.results:
            ok, tot = out.setdefault(r.name, [0, 0])
            out[r.name] = [ok + r.passed, tot + 1]
        return {k: tuple(v) for k, v in out.items()}


def _compare(name, params, a: Series, b: Series) -> CheckResult:
    bad = a.first_difference(b)
    return CheckResult(name, params, bad is None, bad)


def verify_identity_suite(N: int, max_st: int = 5) -> IdentityReport:
    """Exact checks of the chain identities for 1 <= s, t <= max_st.

    * log-difference: Delta_s Delta_t log X = log(R_{s+t} / R_{s+t-1})
    * geodesic boundary: prod_{k<=s+t} R_k equals both
      R^{s+t} [1][s+t+3]/([3][s+t+1]) and
      R^{s+t} ([1][s+3]/([3][s+1])) ([1][t+3]/([3][t+1])) X_{s,t}
    * Delta_s Delta_t X has nonnegative integer coefficients
    """
    if N < 1:
        raise ValueError("the identity suite needs order >= 1")
    rep = IdentityReport(N)
    R = solve_R(N)
    b = lambda k: bracket(k, N)  # noqa: E731

    def logX(a, c):
        return log_series(x_series(a, c, N))

    for s in range(1, max_st + 1):
        for t in range(1, max_st + 1):
            i = s + t
            lhs = logX(s, t) - logX(s - 1, t) - logX(s, t - 1) + logX(s - 1, t - 1)
            rep.results.append(_compare("totaltwo", (s, t), lhs, two_point(i, N)))

            prod = Series.constant(1, N)
            for k in range(1, i + 1):
                prod = prod * r_series(k, N)
            first = R**i * b(1) * b(i + 3) / (b(3) * b(i + 1))
            second = R**i * (b(1) * b(s + 3) / (b(3) * b(s + 1))) * (b(1) * b(t + 3) / (b(3) * b(t + 1)))
            second = second * x_series(s, t, N)
            rep.results.append(_compare("geodesic_boundary_first", (s, t), prod, first))
            rep.results.append(_compare("geodesic_boundary_second", (s, t), prod, second))

            d = delta_st_x(s, t, N)
            bad = next((k for k, a in enumerate(d) if a < 0 or a.denominator != 1), None)
            rep.results.append(CheckResult("ddX_nonneg_integer", (s, t), bad is None, bad))
    return rep


def cross_method_suite(N: int, max_i: int = 10, max_stu: int = 5) -> IdentityReport:
    """Independent routes to the same series, compared exactly.

    * R_i closed vs recursive, i <= max_i
    * X_{s,t} closed vs recursive vs path sum, Y_{s,t,u} closed vs recursive vs sum form
    * F = X X X Y^2 vs its closed product form
    * F as the box sum of G over smaller radii
    * sum_c c X^(c) = X - 1 and sum_c X^(c) = log X
    """
    if N < 1:
        raise ValueError("the identity suite needs order >= 1")
    rep = IdentityReport(N)
    for i in range(1, max_i + 1):
        rep.results.append(_compare("R_closed_vs_recursive", (i,), r_series(i, N), r_series(i, N, "recursive")))
    rng = range(0, max_stu + 1)
    for s, t in itertools.product(rng, rng):
        x = x_series(s, t, N)
        rep.results.append(_compare("X_closed_vs_recursive", (s, t), x, x_series(s, t, N, "recursive")))
        rep.results.append(_compare("X_closed_vs_path_sum", (s, t), x, x_series(s, t, N, "path_sum")))
    for s, t, u in itertools.product(rng, rng, rng):
        y = y_series(s, t, u, N)
        rep.results.append(_compare("Y_closed_vs_recursive", (s, t, u), y, y_series(s, t, u, N, "recursive")))
        rep.results.append(_compare("Y_closed_vs_sum_form", (s, t, u), y, y_series(s, t, u, N, "sum_form")))
        rep.results.append(_compare("F_product_vs_closed", (s, t, u), f_three(s, t, u, N), f_three_closed(s, t, u, N)))
        rep.results.append(f_inverse_sum_check(s, t, u, N))
    for s, t in itertools.product(range(1, max_stu + 1), repeat=2):
        X = x_series(s, t, N)
        terms = [x_c(s, t, c, N) for c in range(1, N + 1)]
        weighted = Series.constant(0, N)
        plain = Series.constant(0, N)
        for c, term in enumerate(terms, start=1):
            weighted = weighted + term * c
            plain = plain + term
        rep.results.append(_compare("sum_c_c_Xc_is_X_minus_1", (s, t), weighted, X - 1))
        rep.results.append(_compare("sum_c_Xc_is_logX", (s, t), plain, log_series(X)))
    return rep
