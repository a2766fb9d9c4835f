"""Truncated power series in the face weight ``g`` with exact rational coefficients.

A :class:`Series` holds the coefficients of ``g**0 .. g**order``; everything
above ``order`` is unknown.  Binary operations truncate to the smaller of the
two orders.  No floating point is used anywhere in this module.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "Series",
    "SeriesError",
    "arith",
    "log_series",
    "exp_series",
    "sqrt_series",
    "solve_R",
    "solve_R_fixed_point",
    "solve_x",
    "bracket",
    "g_series",
]


class SeriesError(ArithmeticError):
    """Raised for formal operations that are undefined on the given input."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"series coefficients must be rational, got {type(c).__name__}")


class Series:
    """Immutable truncated power series ``sum_k c_k g**k`` for ``k <= order``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        c = [_frac(a) for a in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be nonnegative")
            c = c[: order + 1] + [Fraction(0)] * (order + 1 - len(c))
        if not c:
            raise ValueError("a series needs at least one coefficient")
        self._c = tuple(c)

    @classmethod
    def _raw(cls, coeffs: Sequence[Fraction]) -> "Series":
        s = object.__new__(cls)
        s._c = tuple(coeffs)
        return s

    @classmethod
    def constant(cls, value, order: int) -> "Series":
        return cls([value], order)

    @classmethod
    def monomial(cls, k: int, order: int, coeff=1) -> "Series":
        c = [0] * (order + 1)
        if k <= order:
            c[k] = coeff
        return cls(c)

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError("negative power")
        if k > self.order:
            raise IndexError(f"coefficient g^{k} is beyond truncation order {self.order}")
        return self._c[k]

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return Series._raw(self._c[: order + 1])

    def valuation(self) -> int | None:
        for k, a in enumerate(self._c):
            if a:
                return k
        return None

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self._c)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Rational)):
            return Series._raw((_frac(other),) + (Fraction(0),) * self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order) + 1
        a, b = self._c, other._c
        return Series._raw([a[k] + b[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Series._raw([-a for a in self._c])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order) + 1
        a, b = self._c, other._c
        return Series._raw([a[k] - b[k] for k in range(n)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def _scaled(self, n: int) -> tuple[list[int], int]:
        """First ``n`` coefficients as integers over one common denominator."""
        c = self._c[:n]
        den = math.lcm(*(x.denominator for x in c))
        return [x.numerator * (den // x.denominator) for x in c], den

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            f = _frac(other)
            return Series._raw([f * a for a in self._c])
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.order, other.order) + 1
        # integer convolution over common denominators; Fraction arithmetic is far slower
        a, da = self._scaled(n)
        b, db = other._scaled(n)
        va = next((k for k in range(n) if a[k]), n)
        vb = next((k for k in range(n) if b[k]), n)
        out = [0] * n
        for i in range(va, n - vb):
            ai = a[i]
            if not ai:
                continue
            for j in range(vb, n - i):
                out[i + j] += ai * b[j]
        den = da * db
        return Series._raw([Fraction(x, den) for x in out])

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        if self._c[0] == 0:
            raise SeriesError("cannot invert a series with zero constant term")
        n = len(self._c)
        a, den = self._scaled(n)
        a0 = a[0]
        # e_k = a0^(k+1) [g^k] (1/A) is an integer: e_k = -sum_j a_j a0^(j-1) e_(k-j)
        w = [0] + [a[j] * a0 ** (j - 1) for j in range(1, n)]
        e = [1]
        for k in range(1, n):
            acc = 0
            for j in range(1, k + 1):
                if w[j]:
                    acc += w[j] * e[k - j]
            e.append(-acc)
        return Series._raw([Fraction(den * e[k], a0 ** (k + 1)) for k in range(n)])

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise SeriesError("division by zero")
            f = 1 / _frac(other)
            return Series._raw([f * a for a in self._c])
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.order, other.order)
        return self.truncate(n) * other.truncate(n).inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int) -> "Series":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Series.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k: int) -> "Series":
        """Multiply by ``g**k`` (``k >= 0``) or divide by ``g**-k``.

        Dividing requires the first ``-k`` coefficients to vanish and lowers
        the known order accordingly.
        """
        if k >= 0:
            return Series._raw((Fraction(0),) * k + self._c[: len(self._c) - k])
        k = -k
        if any(self._c[:k]):
            raise SeriesError(f"series is not divisible by g^{k}")
        if k > self.order:
            raise SeriesError("nothing left after division")
        return Series._raw(self._c[k:])

    def derivative(self) -> "Series":
        """Formal d/dg; the result has order one less."""
        if self.order == 0:
            raise SeriesError("derivative of an order-0 series is unknown")
        return Series._raw([k * self._c[k] for k in range(1, len(self._c))])

    # -- comparisons / display --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Series):
            return self._c == other._c
        if isinstance(other, (int, Rational)):
            return self._c[0] == other and not any(self._c[1:])
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def agrees_with(self, other: "Series") -> bool:
        """Equality up to the smaller of the two truncation orders."""
        n = min(self.order, other.order) + 1
        return self._c[:n] == other._c[:n]

    def first_difference(self, other: "Series") -> int | None:
        n = min(self.order, other.order) + 1
        for k in range(n):
            if self._c[k] != other._c[k]:
                return k
        return None

    def __repr__(self):
        terms = []
        for k, a in enumerate(self._c):
            if not a:
                continue
            coef = str(a)
            if k == 0:
                terms.append(coef)
            elif k == 1:
                terms.append(f"{coef}*g")
            else:
                terms.append(f"{coef}*g^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"Series({body} + O(g^{self.order + 1}))"


def arith(a: Series, b: Series, kind: str) -> Series:
    """Dispatch ``a (kind) b`` for kind in add/sub/mul/div."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown operation {kind!r}")


def log_series(a: Series) -> Series:
    """Formal logarithm of a series with constant term 1.

    Uses ``(log a)' = a'/a``, solved coefficient by coefficient.
    """
    c = a.coeffs
    if c[0] != 1:
        raise SeriesError(f"log needs constant term 1, got {c[0]}")
    n = len(c)
    # k*L_k = k*a_k - sum_{j=1}^{k-1} j*L_j*a_{k-j}
    L = [Fraction(0)] * n
    for k in range(1, n):
        acc = k * c[k]
        for j in range(1, k):
            if c[k - j]:
                acc -= j * L[j] * c[k - j]
        L[k] = acc / k
    return Series._raw(L)


def exp_series(a: Series) -> Series:
    """Formal exponential of a series with zero constant term."""
    c = a.coeffs
    if c[0] != 0:
        raise SeriesError("exp needs a series with zero constant term")
    n = len(c)
    E = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for k in range(1, n):
        acc = Fraction(0)
        for j in range(1, k + 1):
            if c[j]:
                acc += j * c[j] * E[k - j]
        E[k] = acc / k
    return Series._raw(E)


def sqrt_series(a: Series) -> Series:
    """Square root with constant term +1 of a series with constant term 1."""
    c = a.coeffs
    if c[0] != 1:
        raise SeriesError(f"sqrt needs constant term 1, got {c[0]}")
    n = len(c)
    s = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for k in range(1, n):
        acc = c[k]
        for j in range(1, k):
            acc -= s[j] * s[k - j]
        s[k] = acc / 2
    return Series._raw(s)


def g_series(order: int) -> Series:
    """The series ``g`` itself."""
    return Series.monomial(1, order)


@lru_cache(maxsize=None)
def solve_R(order: int) -> Series:
    """``R = (1 - sqrt(1 - 12 g)) / (6 g)``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    root = sqrt_series(Series([1, -12], order + 1))
    return ((1 - root) / 6).shift(-1)


@lru_cache(maxsize=None)
def solve_R_fixed_point(order: int) -> Series:
    """Same series as :func:`solve_R`, from ``R = 1 + 3 g R**2`` by iteration."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    R = Series.constant(1, order)
    for _ in range(order):
        R = 1 + (3 * R * R).shift(1)
    return R


@lru_cache(maxsize=None)
def solve_x(order: int) -> Series:
    """The series ``x(g)`` with ``x(0) = 0`` and ``g = (x+1+1/x)/(x+4+1/x)**2``.

    Clearing denominators gives ``x (1 + x + x**2) = g (1 + 4x + x**2)**2``;
    each pass of ``x <- g (1+4x+x^2)^2 / (1+x+x^2)`` fixes one more coefficient.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    x = Series.constant(0, order)
    for _ in range(order):
        p = 1 + 4 * x + x * x
        x = (p * p / (1 + x + x * x)).shift(1)
    return x


@lru_cache(maxsize=None)
def bracket(i: int, order: int) -> Series:
    """``[i]_x = 1 + x + ... + x**(i-1)`` evaluated at ``x = solve_x(order)``."""
    if i < 0:
        raise ValueError("bracket index must be nonnegative")
    if i == 0:
        return Series.constant(0, order)
    x = solve_x(order)
    out = Series.constant(1, order)
    p = Series.constant(1, order)
    # x = O(g): powers beyond the order vanish
    for _ in range(1, min(i, order + 1)):
        p = p * x
        out = out + p
    return out
