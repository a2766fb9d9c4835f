"""Continuum scaling functions: grand-canonical and fixed-size (canonical).

Grand-canonical functions depend on a complex scale ``alpha``.  Fixed-size
densities are integrals over a real variable ``xi`` with
``alpha = sqrt(-3 i xi / 2)`` on the branch ``sqrt(-i tau) =
exp(-sign(tau) i pi/4) sqrt(|tau|)``.  Under that branch ``alpha(-xi)`` is
the conjugate of ``alpha(xi)``, so the integral over the real line reduces to
``(4/sqrt(pi)) int_0^inf xi exp(-xi^2) Im f(alpha(xi)) dxi``, which is what
:func:`xi_integral` computes by Gauss-Legendre quadrature on ``[0, cutoff]``,
optionally on a line shifted into the upper half-plane.

Every sinh ratio is evaluated through even functions of ``z = alpha x``
(``z coth z``, ``z^2/sinh^2 z``, ``z^3 cosh z/sinh^3 z``, ``log(sinh z / z)``)
with Taylor series for ``|z| < 1`` and exponentially stable forms otherwise,
so neither overflow at large distances nor cancellation at small distances
spoils the imaginary parts the fixed-size integrals depend on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .series import Series, log_series

__all__ = [
    "ContinuumError",
    "ScalingEval",
    "DEFAULT",
    "alpha_of_xi",
    "scaling_two",
    "scaling_three_F",
    "scaling_three_G",
    "stu_from_distances",
    "marginal_grand_canonical",
    "marginal_closed_form",
    "xi_integral",
    "saddle_shift",
    "rho2",
    "phi2",
    "phi3",
    "rho3",
    "rho_cond",
    "psi",
    "phi_nu",
    "phi_small",
    "rho_small_d12",
    "rho_large_d12",
    "rho_tail",
    "g3_tail",
    "gauss_legendre",
    "integrate_rho2",
    "integrate_rho3",
    "marginal_rho3",
    "integrate_rho_cond",
    "LimitCheck",
    "ridge_width",
    "limit_checks",
]

_SMALL = 1.0  # |z| below which Taylor series are used
_TERMS = 24


class ContinuumError(ArithmeticError):
    """Pole, domain violation, or non-converged quadrature."""


@dataclass(frozen=True)
class ScalingEval:
    """Quadrature settings for the xi integrals and finite-difference steps."""

    cutoff: float = 8.0
    nodes: int = 256
    fd_step: float = 1e-3
    symmetry_tol: float = 1e-10

    def __post_init__(self):
        if self.cutoff <= 0 or self.nodes <= 0 or self.fd_step <= 0:
            raise ValueError("cutoff, nodes and fd_step must be positive")


DEFAULT = ScalingEval()


# -- Taylor coefficients in w = z^2, computed exactly once ----------------------


def _taylor_tables():
    order = _TERMS
    fact = [math.factorial(k) for k in range(2 * order + 2)]
    sinhc = Series([Fraction(1, fact[2 * k + 1]) for k in range(order + 1)])  # sinh z / z
    cosh = Series([Fraction(1, fact[2 * k]) for k in range(order + 1)])
    zcoth = cosh / sinhc
    g = sinhc.inverse() ** 2  # z^2 / sinh^2 z
    h = cosh * sinhc.inverse() ** 3  # z^3 cosh z / sinh^3 z
    lsc = log_series(sinhc)
    return {k: np.array([float(c) for c in s.coeffs][::-1]) for k, s in (("zcoth", zcoth), ("g", g), ("h", h), ("lsc", lsc))}


_TAYLOR = _taylor_tables()


def _even_fn(name: str, z):
    """Evaluate one of the even functions at complex ``z`` (array)."""
    z = np.asarray(z, dtype=complex)
    z = np.where(z.real < 0, -z, z)
    small = np.abs(z) < _SMALL
    out = np.empty_like(z)
    if small.any():
        out[small] = np.polyval(_TAYLOR[name], z[small] ** 2)
    big = ~small
    if big.any():
        zb = z[big]
        e = np.exp(-2 * zb)
        den = -np.expm1(-2 * zb)  # 1 - e^{-2z}
        if np.any(np.abs(den) < 1e-300):
            raise ContinuumError("sinh vanishes: pole of the scaling function")
        if name == "zcoth":
            out[big] = zb * (1 + e) / den
        elif name == "g":
            out[big] = zb * zb * 4 * e / den**2
        elif name == "h":
            out[big] = zb**3 * 4 * e * (1 + e) / den**3
        else:
            out[big] = zb - math.log(2) + np.log(den) - np.log(zb)
    return out


def alpha_of_xi(xi):
    """``sqrt(-3 i xi / 2)`` on the branch ``exp(-sign(tau) i pi/4) sqrt(|tau|)``.

    For real ``xi`` this is the principal square root, which also gives the
    analytic continuation to the upper half xi-plane used by contour shifts.
    """
    xi = np.asarray(xi)
    if not np.iscomplexobj(xi):
        xi = xi.astype(float)
        return np.exp(-np.sign(xi) * 1j * np.pi / 4) * np.sqrt(np.abs(1.5 * xi))
    return np.sqrt(-1.5j * xi)


# -- grand-canonical functions ----------------------------------------------------


def scaling_two(D, alpha):
    """Two-point ``(F, G)`` with ``F = -(2 a^2/3)(1 + 3/sinh^2(a D))`` and ``G = dF/dD``."""
    D = np.asarray(D, dtype=float)
    if np.any(D <= 0):
        raise ContinuumError("distance must be positive")
    alpha = np.asarray(alpha, dtype=complex)
    z = alpha * D
    F = -(2 * alpha**2 / 3) - 2 * _even_fn("g", z) / D**2
    G = 4 * _even_fn("h", z) / D**3
    return F, G


def _check_stu(S, T, U):
    S, T, U = (np.asarray(x, dtype=float) for x in (S, T, U))
    if np.any(S < 0) or np.any(T < 0) or np.any(U < 0):
        raise ContinuumError("S, T, U must be nonnegative (triangle inequalities)")
    return S, T, U


def stu_from_distances(D12, D23, D31):
    D12, D23, D31 = (np.asarray(x, dtype=float) for x in (D12, D23, D31))
    S = (D12 + D31 - D23) / 2
    T = (D12 + D23 - D31) / 2
    U = (D23 + D31 - D12) / 2
    return _check_stu(S, T, U)


def scaling_three_F(S, T, U, alpha):
    """``(3/a^2) (sinh(a(S+T+U)) sinh(aS) sinh(aT) sinh(aU) / (sinh(a(S+T)) sinh(a(T+U)) sinh(a(U+S))))^2``.

    Written as ``3 q^2 exp(2 L)`` with ``q = (S+T+U) S T U / ((S+T)(T+U)(U+S))``
    and ``L`` the signed sum of ``log(sinh z / z)`` terms.
    """
    S, T, U = _check_stu(S, T, U)
    alpha = np.asarray(alpha, dtype=complex)
    Sig = S + T + U
    ST, TU, US = S + T, T + U, U + S
    with np.errstate(invalid="ignore", divide="ignore"):
        q = np.where(Sig * S * T * U == 0, 0.0, Sig * S * T * U / np.where(ST * TU * US == 0, 1.0, ST * TU * US))
    lsc = lambda x: _even_fn("lsc", alpha * x)  # noqa: E731
    L = lsc(Sig) + lsc(S) + lsc(T) + lsc(U) - lsc(ST) - lsc(TU) - lsc(US)
    return 3 * q**2 * np.exp(2 * L)


def _g3_stu(S, T, U, alpha):
    """``(1/2) d_S d_T d_U F`` in closed form; zero where any of S, T, U vanishes."""
    S, T, U = np.broadcast_arrays(*_check_stu(S, T, U))
    alpha = np.asarray(alpha, dtype=complex)
    shape = np.broadcast_shapes(S.shape, alpha.shape)
    S, T, U, alpha = (np.broadcast_to(x, shape) for x in (S, T, U, alpha))
    edge = (S == 0) | (T == 0) | (U == 0)
    one = np.ones(shape)
    S, T, U = (np.where(edge, one, x) for x in (S, T, U))
    Sig = S + T + U

    # alpha coth(alpha x) - alpha, with alpha flipped into Re >= 0 (the function
    # is even); the constant cancels in every first derivative of log F, and
    # dropping it analytically keeps exponentially small differences exact
    a = np.where(alpha.real < 0, -alpha, alpha)

    def c0(x):
        z = a * x
        small = np.abs(z) < _SMALL
        zs = np.where(small, z, 1.0)
        zb = np.where(small, 1.0, z)
        return np.where(small, (_even_fn("zcoth", zs) - zs) / x, 2 * a / np.expm1(2 * zb))

    def c1(x):  # -alpha^2 / sinh^2(alpha x)
        return -_even_fn("g", alpha * x) / x**2

    c0Sig, c0S, c0T, c0U = c0(Sig), c0(S), c0(T), c0(U)
    c0ST, c0TU, c0US = c0(S + T), c0(T + U), c0(U + S)
    LS = c0Sig + c0S - c0ST - c0US
    LT = c0Sig + c0T - c0ST - c0TU
    LU = c0Sig + c0U - c0TU - c0US
    c1Sig = c1(Sig)
    LST = c1Sig - c1(S + T)
    LTU = c1Sig - c1(T + U)
    LUS = c1Sig - c1(U + S)
    LSTU = 2 * _even_fn("h", alpha * Sig) / Sig**3
    F = scaling_three_F(S, T, U, alpha) / 3  # q^2 exp(2L)
    G = 1.5 * F * (8 * LS * LT * LU + 4 * (LST * LU + LUS * LT + LTU * LS) + 2 * LSTU)
    return np.where(edge, 0.0, G)


def scaling_three_G(D12, D23, D31, alpha):
    """Grand-canonical three-point function of the three pairwise distances."""
    S, T, U = stu_from_distances(D12, D23, D31)
    return _g3_stu(S, T, U, alpha)


def g3_tail(D12, D23, D31, alpha):
    """Large-distance form ``66 alpha exp(-alpha (D12+D23+D31))``."""
    return 66 * alpha * np.exp(-alpha * (np.asarray(D12) + D23 + D31))


def marginal_closed_form(D, alpha):
    """``(9/(8 sinh^4(aD))) (4D + 2D cosh(2aD) - 3 sinh(2aD)/a)``."""
    a = complex(alpha)
    return 9 / (8 * np.sinh(a * D) ** 4) * (4 * D + 2 * D * np.cosh(2 * a * D) - 3 * np.sinh(2 * a * D) / a)


def gauss_legendre(a: float, b: float, n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def marginal_grand_canonical(D12: float, alpha, umax: float | None = None, n: int = 96) -> complex:
    """``int G3 dD23 dD31`` over the allowed domain at fixed D12, by cubature.

    Parametrized by ``S in [0, D12]`` and ``U >= 0`` with Jacobian 2.
    """
    a = complex(alpha)
    if umax is None:
        umax = 40.0 / max(a.real, 1e-3)
    s, ws = gauss_legendre(0.0, D12, n)
    # the U-integrand decays exponentially; split the range to resolve the bulk
    u1, w1 = gauss_legendre(0.0, min(umax, 4.0 / max(a.real, 1e-3)), n)
    u2, w2 = gauss_legendre(min(umax, 4.0 / max(a.real, 1e-3)), umax, n)
    u, wu = np.concatenate([u1, u2]), np.concatenate([w1, w2])
    SS, UU = np.meshgrid(s, u, indexing="ij")
    G = _g3_stu(SS, D12 - SS, UU, a)
    return complex(2 * np.einsum("i,ij,j->", ws, G, wu))


# -- fixed-size (canonical) densities ------------------------------------------


_NODE_CACHE: dict = {}


def _nodes(cutoff: float, n: int):
    key = (cutoff, n)
    if key not in _NODE_CACHE:
        _NODE_CACHE[key] = np.polynomial.legendre.leggauss(n)
    x, w = _NODE_CACHE[key]
    return 0.5 * cutoff * (x + 1), 0.5 * cutoff * w


def _xi_sum(f, ev: ScalingEval, n: int, shift):
    """Half-line sum of ``(4/sqrt(pi)) Im[xi e^{-xi^2} f]`` on ``xi = x + i*shift``.

    ``shift`` (broadcast against the output) only matters beyond a common
    cutoff, so the real interval is stretched to keep ``|e^{-xi^2}|`` equally small.
    """
    shift = np.asarray(shift, dtype=float)
    top = math.sqrt(ev.cutoff**2 + float(np.max(shift)) ** 2)
    x, w = _nodes(top, n)
    xi = x + 1j * shift[..., None]
    with np.errstate(over="ignore", invalid="ignore"):
        vals = xi * np.exp(-(xi**2)) * f(alpha_of_xi(xi))
        out = 4 / math.sqrt(math.pi) * np.sum(np.imag(vals) * w, axis=-1)
    if not np.all(np.isfinite(out)):
        raise ContinuumError("xi integrand overflowed: distances beyond the double-precision range")
    return out


def xi_integral(f, ev: ScalingEval = DEFAULT, check_convergence: bool = False, rtol: float = 1e-9, shift=0.0):
    """``(2/(i sqrt(pi))) int_R xi e^{-xi^2} f(alpha(xi)) dxi`` for ``f`` of alpha.

    ``f`` receives ``alpha`` with a trailing axis of xi nodes and must
    broadcast against it.  The conjugation symmetry ``f(alpha(-conj xi)) =
    conj f(alpha(xi))`` that justifies the half-line reduction is checked at a
    few nodes on every call.

    The integrand is analytic in the upper half xi-plane (poles of the sinh
    ratios and the branch cut lie on the negative imaginary axis), so the
    line may be moved to ``Im xi = shift > 0`` without changing the value.
    Moving it toward the saddle point removes the cancellations that make
    the real-axis quadrature useless for exponentially small densities.
    """
    shift = np.asarray(shift, dtype=float)
    if np.any(shift < 0):
        raise ContinuumError("contour shift must be nonnegative")
    probe = np.linspace(0.3, ev.cutoff / 2, 4) + 1j * shift[..., None]
    direct = f(alpha_of_xi(probe))
    mirror = f(alpha_of_xi(-np.conj(probe)))
    scale = np.maximum(1.0, np.abs(direct))
    if np.max(np.abs(mirror - np.conj(direct)) / scale) > ev.symmetry_tol:
        raise ContinuumError("integrand breaks the conjugation symmetry: branch error")
    out = _xi_sum(f, ev, ev.nodes, shift)
    if check_convergence:
        out2 = _xi_sum(f, ev, 2 * ev.nodes, shift)
        err = np.max(np.abs(out2 - out))
        if err > rtol * max(1e-300, float(np.max(np.abs(out2)))) and err > 1e-14:
            raise ContinuumError(f"xi quadrature not converged: change {err:.3e} on doubling nodes")
        out = out2
    return out


def saddle_shift(length):
    """Height ``(3 L^2)^{1/3} / 2`` of the saddle point for a density decaying like ``exp(-2 alpha L)``."""
    return 0.5 * np.cbrt(3 * np.asarray(length, dtype=float) ** 2)


def _expand(x):
    return np.asarray(x, dtype=float)[..., None]


def rho2(D, ev: ScalingEval = DEFAULT, check_convergence: bool = False):
    """Fixed-size two-point density of the rescaled distance."""
    shift = saddle_shift(D)
    D = _expand(D)
    return xi_integral(lambda a: scaling_two(D, a)[1], ev, check_convergence, shift=shift)


def phi2(D, ev: ScalingEval = DEFAULT, check_convergence: bool = False):
    """Cumulative distribution of the rescaled two-point distance."""
    D = _expand(D)
    return xi_integral(lambda a: scaling_two(D, a)[0], ev, check_convergence)


def phi3(S, T, U, ev: ScalingEval = DEFAULT, check_convergence: bool = False):
    """Probability that the three distances are ``S'+T', T'+U', U'+S'`` with primes below S, T, U."""
    S, T, U = (_expand(x) for x in _check_stu(S, T, U))
    return xi_integral(lambda a: scaling_three_F(S, T, U, a), ev, check_convergence)


def rho3(D12, D23, D31, ev: ScalingEval = DEFAULT, check_convergence: bool = False):
    """Fixed-size three-point density of the three rescaled pairwise distances."""
    S, T, U = stu_from_distances(D12, D23, D31)
    shift = saddle_shift(S + T + U)
    S, T, U = (_expand(x) for x in (S, T, U))
    return xi_integral(lambda a: _g3_stu(S, T, U, a), ev, check_convergence, shift=shift)


_RHO2_FLOOR = 1e-250


def rho_cond(D23, D31, D12: float, ev: ScalingEval = DEFAULT):
    """Density of (D23, D31) given D12."""
    r2 = float(rho2(D12, ev))
    if r2 < _RHO2_FLOOR:
        raise ContinuumError(f"two-point density {r2:.3e} at D12={D12} is below the underflow floor")
    return rho3(D12, D23, D31, ev) / r2


def psi(omega):
    """Transverse profile ``(21/64)(1-w^2)^2(3-w^2)`` on ``[-1, 1]``."""
    w = np.asarray(omega, dtype=float)
    if np.any(np.abs(w) > 1):
        raise ContinuumError("omega must lie in [-1, 1]")
    return 21 / 64 * (1 - w**2) ** 2 * (3 - w**2)


def phi_nu(nu):
    """Longitudinal profile ``(4/3) sinh^2(nu/2) (11 e^{-2nu} - 8 e^{-3nu})`` on ``[0, inf)``."""
    v = np.asarray(nu, dtype=float)
    if np.any(v < 0):
        raise ContinuumError("nu must be nonnegative")
    # sinh^2(v/2) e^{-2v} = (1 - e^{-v})^2 e^{-v} / 4
    em = np.exp(-v)
    return (4 / 3) * (-np.expm1(-v)) ** 2 / 4 * (11 * em - 8 * em**2)


def phi_small(S, T, U):
    """Small-distance form of the integrated three-point function, homogeneous of degree 8."""
    S, T, U = _check_stu(S, T, U)
    num = (S * T * U * (S + T + U)) ** 3 * (S**2 + T**2 + U**2 + S * T + T * U + U * S)
    return 9 / 28 * num / ((S + T) ** 2 * (T + U) ** 2 * (U + S) ** 2)


def rho_small_d12(D23, D31, D12: float, ev: ScalingEval = DEFAULT):
    """Factorized small-D12 approximation ``rho2(U) psi(omega) / D12``."""
    U = (np.asarray(D23) + D31 - D12) / 2
    w = (np.asarray(D31) - D23) / D12
    return rho2(U, ev) * psi(w) / D12


def rho_large_d12(D23, D31, D12: float):
    """Large-D12 approximation ``(9 D12)^{1/3} phi((9 D12)^{1/3} U) / (2 D12)``, uniform in S."""
    k = (9 * D12) ** (1 / 3)
    U = (np.asarray(D23) + D31 - D12) / 2
    return k * phi_nu(k * U) / (2 * D12)


def rho_tail(D12, D23, D31):
    """Large-distance form ``(99/sqrt 6) Sum exp(-(3/4)^{5/3} Sum^{4/3})``."""
    s = np.asarray(D12) + D23 + D31
    return 99 / math.sqrt(6) * s * np.exp(-((3 / 4) ** (5 / 3)) * s ** (4 / 3))


# -- cubatures -------------------------------------------------------------------------


def integrate_rho2(dmax: float = 10.0, n: int = 200, ev: ScalingEval = DEFAULT) -> float:
    D, w = gauss_legendre(0.0, dmax, n)
    return float(np.dot(rho2(D, ev), w))


def integrate_rho3(smax: float = 6.0, n: int = 28, ev: ScalingEval = DEFAULT) -> float:
    """``int_D rho3`` over the whole domain, as ``int 2 rho3`` over ``(S,T,U) in [0, smax]^3``."""
    x, w = gauss_legendre(0.0, smax, n)
    S, T, U = np.meshgrid(x, x, x, indexing="ij")
    vals = xi_integral(lambda a: _g3_stu(S[..., None], T[..., None], U[..., None], a), ev, shift=saddle_shift(S + T + U))
    return float(2 * np.einsum("ijk,i,j,k->", vals, w, w, w))


def marginal_rho3(D12: float, umax: float = 6.0, n: int = 48, ev: ScalingEval = DEFAULT) -> float:
    """``int rho3(D12, D23, D31) dD23 dD31`` over the allowed domain at fixed D12."""
    s, ws = gauss_legendre(0.0, D12, n)
    u, wu = gauss_legendre(0.0, umax, n)
    SS, UU = np.meshgrid(s, u, indexing="ij")
    vals = xi_integral(lambda a: _g3_stu(SS[..., None], (D12 - SS)[..., None], UU[..., None], a), ev, shift=saddle_shift(D12 + UU))
    return float(2 * np.einsum("ij,i,j->", vals, ws, wu))


def integrate_rho_cond(D12: float, umax: float = 6.0, n: int = 48, ev: ScalingEval = DEFAULT) -> float:
    return marginal_rho3(D12, umax, n, ev) / float(rho2(D12, ev))


# -- limiting regimes -------------------------------------------------------------------


@dataclass
class LimitCheck:
    name: str
    measured: float
    target: float
    tol: float
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return abs(self.measured - self.target) <= self.tol

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: measured {self.measured:.6g}, target {self.target:.6g} +- {self.tol:g}"


def _ridge_profile(D12: float, S: float, umax: float, n: int, ev: ScalingEval):
    u, w = gauss_legendre(0.0, umax, n)
    return u, w, np.asarray(rho_cond(D12 - S + u, S + u, D12, ev), dtype=float)


def ridge_width(D12: float, n: int = 160, ev: ScalingEval = DEFAULT) -> float:
    """Mean distance ``U`` from the aligned boundary under the conditional density at ``S = D12/2``."""
    k = (9 * D12) ** (1 / 3)
    u, w, r = _ridge_profile(D12, D12 / 2, 15 / k, n, ev)
    return float(np.dot(u * r, w) / np.dot(r, w))


def limit_checks(ev: ScalingEval = DEFAULT) -> list[LimitCheck]:
    """Measured agreement with every limiting regime of the three-point density."""
    out = []

    # small D12: rho_cond ~ rho2(U) psi(omega) / D12
    D12, U, w = 0.05, 1.0, 0.3
    D31, D23 = U + (1 + w) / 2 * D12, U + (1 - w) / 2 * D12
    ratio = float(rho_cond(D23, D31, D12, ev) / rho_small_d12(D23, D31, D12, ev))
    out.append(LimitCheck("small_d12_factorization", ratio, 1.0, 0.03, {"D12": D12, "U": U, "omega": w}))

    # large D12: longitudinal profile in U (L1 relative error) and uniformity in S
    D12 = 10.0
    k = (9 * D12) ** (1 / 3)
    u, wu, r = _ridge_profile(D12, D12 / 2, 15 / k, 200, ev)
    a = rho_large_d12(D12 / 2 + u, D12 / 2 + u, D12)
    l1 = float(np.dot(np.abs(r - a), wu) / np.dot(a, wu))
    pointwise = {nu: float(rho_cond(D12 / 2 + nu / k, D12 / 2 + nu / k, D12, ev) / rho_large_d12(D12 / 2 + nu / k, D12 / 2 + nu / k, D12)) for nu in (0.5, 1.0, 2.0, 3.0)}
    out.append(LimitCheck("large_d12_profile_L1", l1, 0.0, 0.05, {"D12": D12, "pointwise_ratio_by_nu": pointwise}))
    Uc = 1.0 / k
    vals = [float(rho_cond(D12 - S + Uc, S + Uc, D12, ev)) for S in (3.0, 5.0, 7.0)]
    spread = max(vals) / min(vals) - 1
    out.append(LimitCheck("large_d12_transverse_uniformity", spread, 0.0, 0.05, {"S": (3.0, 5.0, 7.0), "values": vals}))

    # width of the ridge scales as D12^(-1/3)
    w6, w10 = ridge_width(6.0, ev=ev), ridge_width(10.0, ev=ev)
    out.append(LimitCheck("ridge_width_ratio_10_over_6", w10 / w6, (10 / 6) ** (-1 / 3), 0.05 * (10 / 6) ** (-1 / 3), {"w6": w6, "w10": w10}))

    # homogeneity of degree 8 of Phi3 and degree 5 of rho3 at small distances
    direction = np.array([0.7, 1.0, 1.3])
    p1, p2 = (float(phi3(*(lam * direction), ev)) for lam in (0.01, 0.02))
    out.append(LimitCheck("phi3_homogeneity_degree", math.log(p2 / p1) / math.log(2), 8.0, 0.05))
    out.append(LimitCheck("phi3_over_lambda8_constancy", (p2 / 0.02**8) / (p1 / 0.01**8), 1.0, 0.01))
    ratio_small = p1 / float(phi_small(*(0.01 * direction)))
    out.append(LimitCheck("phi3_vs_small_distance_form", ratio_small, 1.0, 0.01))
    dists = np.array([1.7, 2.3, 2.0])
    r1, r2 = (float(rho3(*(lam * dists), ev)) for lam in (0.01, 0.02))
    out.append(LimitCheck("rho3_small_distance_degree", math.log(r2 / r1) / math.log(2), 5.0, 0.05))

    # large distances: rho3 ~ rho_tail, sum of distances 12
    t = float(rho3(4.0, 4.0, 4.0, ev) / rho_tail(4.0, 4.0, 4.0))
    out.append(LimitCheck("large_distance_tail_ratio", t, 1.0, 0.05, {"distances": (4.0, 4.0, 4.0)}))
    return out
