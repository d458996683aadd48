from fractions import Fraction as F
from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gammastar.errors import DomainError, InsufficientOrderError, UsageError
from gammastar.series import (
    RationalSeries,
    build_g_series,
    build_lambda_capital_series,
    derivative_at_zero,
    format_rational,
    parse_rational,
    series_from_json,
    series_ipow,
    series_mul,
    series_pow_neg_half_shifted,
    series_to_json,
)


def S(*cs, order=None):
    return RationalSeries(cs, order)


def sympy_coeffs(expr, var, order):
    ser = sympy.series(expr, var, 0, order + 1).removeO()
    return [F(str(sympy.nsimplify(ser.coeff(var, k)))) for k in range(order + 1)]


t = sympy.Symbol("t")


# -- series_mul ---------------------------------------------------------------

def test_mul_difference_of_squares():
    assert series_mul(S(1, 1, 0), S(1, -1, 0)) == S(1, 0, -1)


def test_mul_identity():
    s = S(F(3, 7), -2, F(1, 5), 9)
    assert series_mul(RationalSeries.constant(1, 3), s) == s


def test_mul_g_squared_order_2():
    g = S(1, F(1, 3), F(1, 12))
    assert series_mul(g, g) == S(1, F(2, 3), F(5, 18))


def test_mul_order_mismatch_is_an_error():
    with pytest.raises(UsageError):
        series_mul(S(1, 1), S(1, 1, 1))
    with pytest.raises(UsageError):
        S(1, 1) + S(1, 1, 1)


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        RationalSeries([1.5])


# -- series_ipow ----------------------------------------------------------------

def test_ipow_zero_is_one():
    assert series_ipow(S(5, 3, 1), 0) == S(1, 0, 0)


def test_ipow_one_is_identity():
    a = S(2, F(-1, 3), 7)
    assert series_ipow(a, 1) == a


def test_ipow_phi_cubed():
    phi = S(1, F(-1, 6), 0)
    assert series_ipow(phi, 3) == S(1, F(-1, 2), F(1, 12))


def test_ipow_matches_repeated_multiplication():
    a = S(1, F(1, 2), F(-2, 3), 4, F(1, 7))
    acc = RationalSeries.constant(1, 4)
    for k in range(9):
        assert series_ipow(a, k) == acc
        acc = series_mul(acc, a)


# -- series_pow_neg_half_shifted --------------------------------------------------

@pytest.mark.parametrize("n", [0, 1, 3, 7])
def test_pow_neg_half_of_one(n):
    assert series_pow_neg_half_shifted(RationalSeries.constant(1, 5), n) == RationalSeries.constant(1, 5)


def test_phi_from_g():
    phi = series_pow_neg_half_shifted(build_g_series(3), 0)
    assert phi.coeffs[:3] == (1, F(-1, 6), 0)


def test_phi_matches_sympy_closed_form():
    order = 10
    phi = series_pow_neg_half_shifted(build_g_series(order), 0)
    expected = sympy_coeffs(sympy.sqrt(t**2 / 2 / (sympy.exp(t) - 1 - t)), t, order)
    assert list(phi.coeffs) == expected


def test_lambda_capital_to_the_minus_three_halves():
    lam = build_lambda_capital_series(2)
    assert series_pow_neg_half_shifted(lam, 1) == S(1, 1, F(1, 12))


def test_pow_neg_half_domain_error():
    with pytest.raises(DomainError):
        series_pow_neg_half_shifted(S(2, 1), 0)


@pytest.mark.parametrize("n", [0, 1, 2, 5])
def test_pow_neg_half_defining_identity(n):
    # y^2 * a^(2n+1) == 1
    a = build_g_series(12)
    y = series_pow_neg_half_shifted(a, n)
    assert series_mul(series_mul(y, y), series_ipow(a, 2 * n + 1)) == RationalSeries.constant(1, 12)


def test_phi_t2_coefficient_is_exactly_zero():
    for order in (2, 5, 20):
        assert series_pow_neg_half_shifted(build_g_series(order), 0).coeffs[2] == 0


# -- derivative_at_zero -----------------------------------------------------------

def test_derivative_examples():
    assert derivative_at_zero(S(1, 1), 1) == 1
    phi3 = series_ipow(series_pow_neg_half_shifted(build_g_series(2), 0), 3)
    assert derivative_at_zero(phi3, 2) == F(1, 6)
    a = S(F(4, 9), 2, 3)
    assert derivative_at_zero(a, 0) == F(4, 9)


def test_derivative_insufficient_order():
    with pytest.raises(InsufficientOrderError):
        derivative_at_zero(S(1, 1), 2)


# -- builders ---------------------------------------------------------------------

def test_g_series():
    assert build_g_series(0) == S(1)
    assert build_g_series(2) == S(1, F(1, 3), F(1, 12))
    assert build_g_series(4).coeffs[-1] == F(1, 360)


def test_lambda_capital_series():
    assert build_lambda_capital_series(0) == S(1)
    assert build_lambda_capital_series(2) == S(1, F(-2, 3), F(1, 2))
    assert build_lambda_capital_series(3).coeffs[3] == F(-2, 5)


def test_lambda_capital_matches_sympy():
    z = sympy.Symbol("z")
    lam = (sympy.log(1 + z) - z + z**2 / 2) / z**2
    assert list(build_lambda_capital_series(9).coeffs) == sympy_coeffs(1 - 2 * lam, z, 9)


# -- serialization ----------------------------------------------------------------

def test_rational_formatting():
    assert format_rational(F(-571, 2488320)) == "-571/2488320"
    assert format_rational(F(6, 3)) == "2"
    assert parse_rational("139/51840") == F(139, 51840)


def test_series_json_round_trip():
    a = series_pow_neg_half_shifted(build_g_series(6), 2)
    text = series_to_json(a)
    assert series_from_json(text) == a
    assert text.startswith('["1", ')


# -- ring axioms ------------------------------------------------------------------

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=50)


@st.composite
def series_triples(draw):
    order = draw(st.integers(0, 16))
    mk = lambda: RationalSeries(draw(st.lists(fractions, min_size=order + 1, max_size=order + 1)))
    return mk(), mk(), mk()


@settings(max_examples=40, deadline=None)
@given(series_triples())
def test_ring_axioms(abc):
    a, b, c = abc
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    for q in (a * b).coeffs:
        assert q.denominator > 0 and gcd(q.numerator, q.denominator) == 1
