from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threepoint.series import (
    Series,
    SeriesError,
    arith,
    bracket,
    exp_series,
    log_series,
    solve_R,
    solve_R_fixed_point,
    solve_x,
    sqrt_series,
)

N = 8
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def series_st(const=None):
    tail = st.lists(fracs, min_size=N, max_size=N)
    if const is None:
        return st.builds(lambda c0, t: Series([c0] + t, N), fracs, tail)
    return st.builds(lambda t: Series([const] + t, N), tail)


def naive_mul(a: Series, b: Series) -> Series:
    n = min(a.order, b.order)
    return Series([sum((a[j] * b[k - j] for j in range(k + 1)), Fraction(0)) for k in range(n + 1)])


def test_arith_examples():
    g = Series([0, 1], 6)
    assert arith(1 + g, 1 - g, "mul") == Series([1, 0, -1], 6)
    assert arith(Series.constant(1, 6), 1 - g, "div") == Series([1] * 7)
    assert arith(Series([1, 3, 18], 6), Series([1, 3], 6), "sub") == Series([0, 0, 18], 6)
    with pytest.raises(ValueError):
        arith(g, g, "pow")


def test_division_by_zero_constant_term():
    with pytest.raises(SeriesError):
        Series.constant(1, 4) / Series([0, 1], 4)


def test_log_examples():
    assert log_series(Series.constant(1, 5)) == Series.constant(0, 5)
    geo = Series.constant(1, 6) / Series([1, -1], 6)
    assert log_series(geo) == Series([0] + [Fraction(1, k) for k in range(1, 7)])
    assert log_series(Series([1, 2], 4))[2] == -2
    with pytest.raises(SeriesError):
        log_series(Series([2, 1], 3))


def test_sqrt_examples():
    assert sqrt_series(Series.constant(1, 4)) == Series.constant(1, 4)
    assert sqrt_series(Series([1, -12], 4))[1] == -6
    with pytest.raises(SeriesError):
        sqrt_series(Series([4, 1], 3))


def test_R_and_x():
    assert solve_R(3).coeffs == (1, 3, 18, 135)
    assert solve_R(12) == solve_R_fixed_point(12)
    x = solve_x(10)
    assert x[0] == 0 and x[1] == 1
    g = x * (1 + x + x * x) / ((1 + 4 * x + x * x) ** 2)
    assert g == Series([0, 1], 10)


def test_bracket():
    assert bracket(0, 6) == Series.constant(0, 6)
    assert bracket(1, 6) == Series.constant(1, 6)
    assert bracket(2, 6) == 1 + solve_x(6)


@settings(max_examples=60, deadline=None)
@given(series_st(), series_st())
def test_integer_product_matches_naive(a, b):
    assert a * b == naive_mul(a, b)


@settings(max_examples=60, deadline=None)
@given(series_st(), series_st())
def test_division_inverts_product(a, b):
    if b[0] == 0:
        return
    assert (a * b) / b == a


@settings(max_examples=40, deadline=None)
@given(series_st(const=Fraction(0)))
def test_log_exp_roundtrip(a):
    assert log_series(exp_series(a)) == a


@settings(max_examples=40, deadline=None)
@given(series_st(const=Fraction(1)))
def test_sqrt_squares_back(a):
    r = sqrt_series(a)
    assert r * r == a


@settings(max_examples=40, deadline=None)
@given(series_st(const=Fraction(1)), series_st(const=Fraction(1)))
def test_log_of_product_is_sum(a, b):
    assert log_series(a * b) == log_series(a) + log_series(b)
