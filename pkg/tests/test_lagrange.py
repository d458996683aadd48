import math
from fractions import Fraction as F

import numpy as np
import pytest

from gammastar.coefficients import gamma_via_recurrence, phi_series, pochhammer_half
from gammastar.errors import ContourError, UsageError
from gammastar.lagrange import (
    DEFAULT_PHI,
    AnalyticPhi,
    InversionSpec,
    correction_coefficient,
    correction_term,
    default_contour,
    dt_du_even_series,
    inversion_coefficients,
    inversion_series_coeffs,
    invert_h_newton,
    reconstruct,
    remainder_qm,
)
from gammastar.quadrature import circle
from gammastar.series import RationalSeries, derivative_at_zero, series_ipow

ONE = RationalSeries.constant(1, 8)
ONE_PLUS_T = RationalSeries([1, 1], 8)
phi_one = AnalyticPhi(lambda z: (np.ones_like(z), np.zeros_like(z)), name="one")
phi_linear = AnalyticPhi(lambda z: (1 + z, np.ones_like(z)), name="1+t")


def bisect(f, lo, hi):
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if (f(mid) > 0) == (f(lo) > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# -- exact parts --------------------------------------------------------------------

def test_constant_phi_series():
    assert inversion_series_coeffs(ONE, 6) == [1, 0, 0, 0, 0]


def test_default_phi_first_coefficients():
    a = inversion_series_coeffs(phi_series(3), 3)
    assert a == [1, F(-1, 6)]


def test_geometric_phi():
    # t = u (1 + t)  =>  t = u / (1 - u)
    assert inversion_series_coeffs(ONE_PLUS_T, 8) == [1] * 7


def test_inversion_series_inverts_u_of_t():
    # compose u(t) = t / phi(t) with t(u) and check the identity up to order 12
    N = 12
    a = inversion_coefficients(phi_series(N), N)
    t_of_u = RationalSeries([0] + a, N)
    # t - u phi(t) == 0 as a series in u
    phi = phi_series(N)
    phi_of_t = RationalSeries.constant(0, N)
    power = RationalSeries.constant(1, N)
    for c in phi.coeffs:
        phi_of_t = phi_of_t + power * c
        power = power * t_of_u
    u = RationalSeries.variable(N)
    assert t_of_u - u * phi_of_t == RationalSeries.constant(0, N)


def test_correction_examples():
    assert correction_term(ONE, 2, 1.7) == 0.0
    # D phi^2(0) = 2 phi(0) phi'(0) = -1/3; coefficient -(m-1)/m! * (-1/3)
    assert correction_coefficient(phi_series(2), 2) == F(1, 6)
    assert correction_term(phi_series(2), 2, 1.0) == pytest.approx(1 / 6, rel=1e-15)
    assert correction_term(phi_series(5), 4, 0.0) == 0.0
    assert correction_coefficient(phi_series(3), 1) == 0


def test_correction_matches_derivative_formula():
    phi = phi_series(8)
    for m in range(1, 8):
        d = derivative_at_zero(series_ipow(phi, m), m - 1)
        assert correction_coefficient(phi, m) == -F(m - 1, math.factorial(m)) * d


def test_dt_du_even_series():
    c = dt_du_even_series(4)
    assert c[0] == 1
    assert c[1] == F(1, 12)
    phi = phi_series(8)
    for n, cn in enumerate(c):
        assert cn == derivative_at_zero(series_ipow(phi, 2 * n + 1), 2 * n) / math.factorial(2 * n)


def test_dt_du_gaussian_moments_give_stirling_coefficients():
    c = dt_du_even_series(7)
    for n, cn in enumerate(c):
        assert 2**n * pochhammer_half(n) * cn == (-1) ** n * gamma_via_recurrence(n)


def test_termwise_derivative_matches_even_series():
    N = 13
    t_series = RationalSeries([0] + inversion_coefficients(phi_series(N), N), N)
    deriv = t_series.derivative()
    assert [deriv.coeffs[2 * n] for n in range(6)] == dt_du_even_series(6)


def test_spec_validation():
    with pytest.raises(UsageError):
        InversionSpec(RationalSeries([0, 1], 3), 2)
    with pytest.raises(UsageError):
        InversionSpec(phi_series(2), 3)
    with pytest.raises(UsageError):
        InversionSpec(phi_series(2), 0)


# -- Newton oracle -------------------------------------------------------------------

def test_newton_zero():
    assert invert_h_newton(0.0) == 0.0


@pytest.mark.parametrize("u", [1.0, -1.0, 0.01, -0.3, 2.5, 5.0, -7.0])
def test_newton_against_bisection(u):
    f = lambda t: math.expm1(t) - t - 0.5 * u * u
    lo, hi = (0.0, 20.0) if u > 0 else (-60.0, 0.0)
    assert invert_h_newton(u) == pytest.approx(bisect(f, lo, hi), rel=1e-14)


def test_newton_asymmetric():
    assert invert_h_newton(1.0) != -invert_h_newton(-1.0)
    assert invert_h_newton(-1.0) < -1.0 < 0 < invert_h_newton(1.0) < 1.0


# -- remainder -----------------------------------------------------------------------

@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_constant_phi_remainder(m):
    spec = InversionSpec(ONE, m, analytic=phi_one)
    u = 0.7
    q = remainder_qm(spec, u, circle(0.2, 1.5), t=u)
    expected = u if m == 1 else 0.0
    assert abs(q.value - expected) < 1e-13


@pytest.mark.parametrize("m", [1, 2, 4, 6])
@pytest.mark.parametrize("u", [0.2, 0.45, -0.6])
def test_geometric_phi_reconstruction(m, u):
    spec = InversionSpec(ONE_PLUS_T, m, analytic=phi_linear)
    t = u / (1 - u)
    a = inversion_series_coeffs(ONE_PLUS_T, m)
    series = sum(float(c) * u ** (n + 1) for n, c in enumerate(a))
    corr = correction_term(ONE_PLUS_T, m, u)
    q = remainder_qm(spec, u, circle(t / 2, abs(t) / 2 + 0.3), t=t)
    assert abs(series + corr + q.real - t) < 1e-12
    assert abs(q.imag) < 1e-12


def test_custom_phi_needs_root():
    spec = InversionSpec(ONE_PLUS_T, 2, analytic=phi_linear)
    with pytest.raises(UsageError):
        remainder_qm(spec, 0.3)


def test_remainder_at_zero():
    assert remainder_qm(InversionSpec.default(3), 0.0).value == 0


@pytest.mark.parametrize("u", [0.25, 1.0, 2.0, -1.5])
@pytest.mark.parametrize("m", [2, 4, 6])
def test_reconstruction(u, m):
    res = reconstruct(u, m)
    assert res.defect < 1e-10
    assert abs(res.remainder.imag) < 1e-10


def test_reconstruction_near_radius():
    assert reconstruct(2.5, 5).defect < 1e-9


def test_contour_must_enclose_root():
    spec = InversionSpec.default(3)
    t = invert_h_newton(2.0)
    with pytest.raises(ContourError):
        remainder_qm(spec, 2.0, circle(0.0, 0.5 * t), t=t)


def test_contour_too_close_to_root():
    spec = InversionSpec.default(3)
    t = invert_h_newton(1.0)
    with pytest.raises(ContourError):
        remainder_qm(spec, 1.0, circle(t / 2, t / 2 + 1e-5), t=t)


@pytest.mark.parametrize("u", [-3.0, -1.0, 0.5, 1.5, 3.0])
def test_phi_analytic_inside_default_contour(u):
    t = invert_h_newton(u)
    path = default_contour(t)
    seg = path.segments[0]
    # scan the closed disc; the principal root is analytic iff 2h/z^2 avoids (-inf, 0]
    r = np.linspace(0.0, seg.radius, 120)[1:, None]
    th = np.linspace(0, 2 * math.pi, 240)[None, :]
    z = (seg.center + r * np.exp(1j * th)).ravel()
    arg = DEFAULT_PHI.branch_argument(z)
    assert np.all(arg.real > 0) or np.min(np.abs(arg.imag[arg.real <= 0])) > 1e-3


def test_phi_closed_form_matches_series():
    z = np.array([0.3 + 0.2j, -0.5j, 0.04, 0.06 - 0.01j, 1.2 - 0.7j])
    val, der = DEFAULT_PHI(z)
    phi = phi_series(40)
    for zi, v, d in zip(z, val, der):
        assert abs(v - phi.evaluate(zi)) < 1e-13
        assert abs(d - phi.derivative().evaluate(zi)) < 1e-12


def test_result_serialization():
    d = reconstruct(1.0, 4).to_dict()
    assert set(d) == {"u", "m", "series", "correction", "remainder", "reconstructed", "newton", "defect"}
    assert d["defect"] < 1e-10


@pytest.mark.parametrize("u", [5.0, -4.0])
def test_reconstruct_outside_disc_high_m(u):
    res = reconstruct(u, 6)
    assert res.defect < 1e-10
