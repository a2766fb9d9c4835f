import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import quad

from threepoint import continuum as c
from threepoint.series import Series


def central(f, x, h):
    return (f(x + h) - f(x - h)) / (2 * h)


def mixed_third(F, S, T, U, h):
    acc = 0
    for i in (1, -1):
        for j in (1, -1):
            for k in (1, -1):
                acc += i * j * k * F(S + i * h, T + j * h, U + k * h)
    return acc / (8 * h**3)


def test_alpha_branch_is_conjugate_symmetric():
    xi = np.array([0.3, 1.7, 4.0])
    assert np.allclose(c.alpha_of_xi(-xi), np.conj(c.alpha_of_xi(xi)))
    assert np.allclose(c.alpha_of_xi(xi) ** 2, -1.5j * xi)


def test_scaling_two():
    a = 0.7 + 0.2j
    F = lambda x: c.scaling_two(x, a)[0]  # noqa: E731
    G = c.scaling_two(1.3, a)[1]
    assert abs(central(F, 1.3, 1e-5) - G) / abs(G) < 1e-6
    D = np.linspace(0.1, 8, 40)
    assert np.all(c.scaling_two(D, 0.9)[1].real > 0)
    assert c.scaling_two(20.0, 0.7)[1].real / (16 * 0.7**3 * math.exp(-28)) == pytest.approx(1, rel=1e-6)
    with pytest.raises(c.ContinuumError):
        c.scaling_two(0.0, a)


def test_scaling_two_small_argument_branch():
    # Taylor and exponential branches agree where they meet
    a = 1.0
    lo, hi = c.scaling_two(0.999999, a)[1], c.scaling_two(1.000001, a)[1]
    assert abs(lo - hi) / abs(lo) < 1e-5


def test_scaling_three_F():
    a = 0.9
    assert c.scaling_three_F(0.3, 0.7, 0.0, a) == 0
    vals = [c.scaling_three_F(*p, a) for p in ((0.3, 0.7, 1.1), (1.1, 0.3, 0.7), (0.7, 1.1, 0.3), (0.3, 1.1, 0.7))]
    assert np.allclose(vals, vals[0], rtol=1e-13)
    # every sinh ratio tends to 1/2 at large separations
    assert c.scaling_three_F(40.0, 40.0, 40.0, 1.0).real == pytest.approx(0.75, rel=1e-12)
    assert c.scaling_three_F(80.0, 80.0, 80.0, 0.5).real == pytest.approx(3.0, rel=1e-12)


def test_scaling_three_G():
    a = 0.8
    vals = [c.scaling_three_G(*p, a) for p in ((1.0, 1.2, 1.4), (1.2, 1.4, 1.0), (1.4, 1.0, 1.2), (1.0, 1.4, 1.2))]
    assert np.allclose(vals, vals[0], rtol=1e-12)
    S, T, U = (float(x) for x in c.stu_from_distances(1.0, 1.2, 1.4))
    F = lambda s, t, u: c.scaling_three_F(s, t, u, a)  # noqa: E731
    fd = mixed_third(F, S, T, U, 3e-3) / 2
    assert abs(fd - vals[0]) / abs(vals[0]) < 1e-4
    D = 30 / a / 3
    assert abs(c.scaling_three_G(D, D, D, a) / c.g3_tail(D, D, D, a) - 1) < 1e-2
    with pytest.raises(c.ContinuumError):
        c.scaling_three_G(1.0, 3.0, 1.0, a)


def test_grand_canonical_marginal():
    for a in (0.9, 1.3):
        for D in (0.5, 1.0, 2.0):
            got = c.marginal_grand_canonical(D, a)
            want = c.marginal_closed_form(D, a)
            assert abs(got - want) < 1e-6 * max(1.0, abs(want))


def test_xi_integral_of_constant_vanishes():
    assert c.xi_integral(lambda a: np.ones_like(a)) == 0


def test_xi_integral_detects_branch_error():
    with pytest.raises(c.ContinuumError):
        c.xi_integral(lambda a: a * 1j)


def test_two_point_density():
    assert float(c.rho2(0.05)) / 0.05**3 == pytest.approx(3 / 7, rel=0.02)
    assert abs(float(c.phi2(1e-3))) < 1e-6
    assert abs(float(c.phi2(30.0)) - 1) < 1e-6
    assert abs(c.integrate_rho2() - 1) < 1e-4
    x = np.linspace(0.5, 3.0, 501)
    assert abs(x[np.argmax(c.rho2(x))] - 1.5) < 0.1
    grid = c.phi2(np.linspace(0.05, 6, 120))
    assert np.all(np.diff(grid) > 0)


def test_two_point_density_far_tail_is_tiny_and_positive():
    r = float(c.rho2(20.0))
    assert 0 < r < 1e-30


def test_three_point_density_basics():
    assert float(c.rho3(1.0, 0.6, 0.4)) == 0
    r = c.rho3(1.2, 1.5, 1.7)
    assert float(r) > 0
    assert float(c.rho3(1.5, 1.7, 1.2)) == pytest.approx(float(r), rel=1e-12)


@pytest.mark.parametrize("D12", [0.8, 1.5, 3.0])
def test_marginal_matches_two_point(D12):
    assert abs(c.marginal_rho3(D12) - float(c.rho2(D12))) < 1e-3


def test_conditional_density():
    assert abs(c.integrate_rho_cond(1.5) - 1) < 5e-3
    g = np.linspace(0.05, 4, 80)
    A, B = np.meshgrid(g, g, indexing="ij")
    far_from_ridge = {}
    for D12 in (0.8, 1.5, 3.0):
        ok = (A + B > D12) & (np.abs(A - B) < D12)
        vals = np.full(A.shape, -1.0)
        vals[ok] = c.rho_cond(A[ok], B[ok], D12)
        i = np.unravel_index(np.argmax(vals), A.shape)
        far_from_ridge[D12] = A[i] + B[i] - D12
        if D12 < 2:
            assert abs(A[i] - 1.5) < 0.2 and abs(B[i] - 1.5) < 0.2
    assert far_from_ridge[3.0] < 0.6 * far_from_ridge[0.8]
    with pytest.raises(c.ContinuumError):
        c.rho_cond(500.0, 500.0, 400.0)


def test_profiles():
    assert c.psi(1.0) == 0 and c.psi(-1.0) == 0
    assert c.psi(0.0) == pytest.approx(63 / 64, abs=1e-15)
    assert c.phi_nu(0.0) == 0
    # int_{-1}^{1} psi, exactly: (21/64) * int (1-w^2)^2 (3-w^2)
    p = Series([1, 0, -1], 6)
    poly = p * p * Series([3, 0, -1], 6)
    integral = sum((2 * poly[k] / (k + 1) for k in range(0, 7, 2)), Fraction(0))
    assert Fraction(21, 64) * integral == 1
    assert quad(c.phi_nu, 0, np.inf)[0] == pytest.approx(1, abs=1e-8)
    with pytest.raises(c.ContinuumError):
        c.psi(1.5)
    with pytest.raises(c.ContinuumError):
        c.phi_nu(-0.1)


def test_phi_small_homogeneous():
    S, T, U = 0.3, 0.5, 0.9
    assert c.phi_small(2 * S, 2 * T, 2 * U) == pytest.approx(2**8 * c.phi_small(S, T, U), rel=1e-12)


def test_limit_check_records():
    chk = c.LimitCheck("x", 1.01, 1.0, 0.02)
    assert chk.passed and chk.line().startswith("PASS")
    assert not c.LimitCheck("x", 1.05, 1.0, 0.02).passed


def test_eval_settings_validated():
    with pytest.raises(ValueError):
        c.ScalingEval(cutoff=-1)
