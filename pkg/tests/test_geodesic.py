from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threepoint.geodesic import (
    Geometric,
    GeodesicError,
    a_st,
    f_local,
    f_local_u0,
    geodesic_profile,
    large_t_ratio,
    mean_profile_limit,
    n_d,
    p_finite_n,
    p_geodesic,
    p_geodesic_terms,
    p_inf,
    p_inf_far,
    p_inf_far_terms,
    p_inf_terms,
)


def triple_difference(s, t, u):
    out = Fraction(0)
    for ds in (0, 1):
        for dt in (0, 1):
            for du in (0, 1):
                out += (-1) ** (ds + dt + du) * f_local(s - ds, t - dt, u - du)
    return out


def test_f_local_reductions():
    assert f_local(0, 0, 0) == 0
    for s in range(7):
        for t in range(7):
            assert f_local(s, t, 0) == f_local_u0(s, t)


def test_f_local_symmetric():
    assert f_local(1, 2, 3) == f_local(3, 1, 2) == f_local(2, 3, 1) == f_local(2, 1, 3)


def test_mean_counts_nonnegative():
    for s in range(1, 7):
        for t in range(1, 7):
            for u in range(1, 7):
                assert triple_difference(s, t, u) >= 0


def test_profile():
    assert n_d(1) == Fraction(102, 35)
    assert [geodesic_profile(s, 10) for s in range(1, 10)] == [geodesic_profile(10 - s, 10) for s in range(1, 10)]
    with pytest.raises(GeodesicError):
        geodesic_profile(0, 4)
    # d -> infinity with s fixed
    assert abs(float(geodesic_profile(2, 4000) - mean_profile_limit(2))) < 1e-2


def test_a_st():
    assert a_st(1, 1) == Fraction(5, 4)


@pytest.mark.parametrize("s,t", [(s, t) for s in range(1, 6) for t in range(1, 6)])
def test_p_geodesic_sums_to_one(s, t):
    law = p_geodesic_terms(s, t)
    assert law.total() == 1
    assert law.mean() == geodesic_profile(s, s + t)


def test_p_geodesic_matches_terms():
    assert p_geodesic(3, 2, 3) == p_geodesic_terms(2, 3)(3)
    with pytest.raises(GeodesicError):
        p_geodesic(0, 1, 1)


def test_p_inf():
    for c in range(1, 8):
        assert p_inf(c, 1) == 2 * Fraction(1, 3) ** c
    for s in range(1, 11):
        law = p_inf_terms(s)
        assert law.total() == 1
        assert law.mean() == mean_profile_limit(s)
    far = [float(p_inf(c, 10**6)) for c in range(1, 6)]
    assert far == pytest.approx([float(p_inf_far(c)) for c in range(1, 6)], rel=1e-5)


def test_p_inf_far():
    assert p_inf_far(1) == Fraction(1, 3)
    assert p_inf_far_terms().total() == 1
    assert p_inf_far_terms().mean() == 3


def test_geometric_rejects_divergent_ratio():
    with pytest.raises(GeodesicError):
        Geometric([(1, 1)])


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(1, 30))
def test_geometric_tail_partial_sums(s, t, c):
    law = p_geodesic_terms(s, t)
    head = sum((law(k) for k in range(1, c + 1)), Fraction(0))
    assert head + law.tail(c) == 1
    assert law(c) >= 0


def test_large_t_decay():
    for s in range(1, 11):
        r1, r2 = large_t_ratio(s, 1000), large_t_ratio(s, 10000)
        assert abs(r2 - 1) < abs(r1 - 1)
        assert 10000 * abs(r2 - 1) < 40


def test_p_finite_n():
    total = sum((p_finite_n(c, 1, 1, 6) for c in range(1, 30)), Fraction(0))
    assert total <= 1
    assert abs(total - 1) < Fraction(1, 10**6)
    with pytest.raises(GeodesicError):
        p_finite_n(1, 3, 3, 2)
