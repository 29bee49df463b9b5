"""Tests for Pochhammer/gamma evaluation and power-series arithmetic."""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.errors import (
    EvaluationDomainError,
    PoleError,
    SeriesDomainError,
    ToleranceNotMetError,
)
from app.models import BesselParams, LommelParams, PowerSeries
from app.series import (
    derivatives,
    divide_by_z,
    gamma,
    multiply_by_z,
    pochhammer,
    scale,
    series_derivative,
    series_eval,
    series_eval_many,
    tail_hint,
)
from app.special import bessel_u_coeffs, lommel_h_coeffs

EXP_SERIES = PowerSeries(coeffs=[1 / math.factorial(n) for n in range(31)])


# ---------------------------------------------------------------------------
# Pochhammer and gamma
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "lam,n,expected",
    [(2.5, 0, 1), (1, 4, 24), (1.5, 2, 3.75), (-2, 3, 0), (0.5j, 1, 0.5j)],
)
def test_pochhammer_values(lam, n, expected):
    assert pochhammer(lam, n) == pytest.approx(expected)


def test_pochhammer_negative_n():
    with pytest.raises(ValueError):
        pochhammer(1.0, -1)


@given(
    lam=st.floats(min_value=-5, max_value=5, allow_nan=False),
    n=st.integers(min_value=0, max_value=30),
)
def test_pochhammer_step(lam, n):
    assert pochhammer(lam, n + 1) == pochhammer(lam, n) * (lam + n)


@pytest.mark.parametrize(
    "z,expected", [(1, 1), (5, 24), (0.5, math.sqrt(math.pi)), (1.5, math.sqrt(math.pi) / 2)]
)
def test_gamma_real_values(z, expected):
    assert gamma(z) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("z", [0, -1, -3, -10.0])
def test_gamma_poles(z):
    with pytest.raises(PoleError):
        gamma(z)


def test_gamma_pole_error_is_value_error():
    with pytest.raises(ValueError):
        gamma(-2)


@pytest.mark.parametrize("z", [0.5 + 1j, 2.3 - 4.1j, 7 + 0.25j, 0.1 + 9j])
def test_gamma_matches_mpmath(z):
    expected = complex(mpmath.gamma(mpmath.mpc(z.real, z.imag)))
    assert abs(gamma(z) - expected) <= 1e-12 * abs(expected)


@settings(max_examples=60)
@given(
    re=st.floats(min_value=0.5, max_value=29.0),
    im=st.floats(min_value=-10.0, max_value=10.0),
)
def test_gamma_functional_equation(re, im):
    z = complex(re, im)
    lhs = gamma(z + 1)
    rhs = z * gamma(z)
    assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def test_exp_series_at_one():
    assert abs(series_eval(EXP_SERIES, 1.0) - math.e) <= 1e-12


def test_zero_series():
    assert series_eval(PowerSeries(coeffs=[0] * 10), 0.7 + 0.2j) == 0


def test_sinc_value(sinc_params):
    value = series_eval(bessel_u_coeffs(sinc_params), 0.25)
    assert abs(value - 0.9588510772084060) <= 1e-13


def test_point_outside_evaluation_disk():
    with pytest.raises(EvaluationDomainError):
        series_eval(EXP_SERIES, 1.1)


def test_uncertified_tail_raises():
    ones = PowerSeries(coeffs=np.ones(100))
    with pytest.raises(ToleranceNotMetError):
        series_eval(ones, 0.99)


class TestZeroPaddedSeries:
    """Polynomials stored past max_terms evaluate exactly; trailing zeros need no ratio test."""

    def test_padded_polynomial(self):
        s = PowerSeries(coeffs=[0, 1, 1] + [0] * 62)
        assert series_eval(s, 0.5) == pytest.approx(0.75, abs=1e-15)

    def test_padded_constant_batch(self):
        s = PowerSeries(coeffs=[1] + [0] * 120)
        values = series_eval_many(s, np.array([0, 0.5, -0.99j, 1.0]))
        assert np.all(values == 1)

    def test_constant_bessel_series(self):
        u = bessel_u_coeffs(BesselParams(p=1, b=1, c=0))
        assert u.truncation_order == 64
        assert series_eval(u, 0.5) == 1

    def test_nonzero_tail_still_checked(self):
        coeffs = [0, 1, 1] + [0] * 62 + [1]
        with pytest.raises(ToleranceNotMetError):
            series_eval(PowerSeries(coeffs=coeffs), 0.99)


def test_batch_and_scalar_paths_agree(sinc_params):
    u = bessel_u_coeffs(sinc_params)
    points = np.array([0.1, 0.5j, -0.99, 0.3 - 0.8j])
    batch = series_eval_many(u, points)
    for z, value in zip(points, batch):
        assert series_eval(u, z) == pytest.approx(value, rel=0, abs=1e-15)


def test_evaluation_is_deterministic(lommel_8_3):
    h = lommel_h_coeffs(lommel_8_3)
    assert series_eval(h, 0.9 - 0.3j) == series_eval(h, 0.9 - 0.3j)


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------


def test_derivative_of_z_is_one():
    ds = series_derivative(PowerSeries(coeffs=[0, 1]))
    assert list(ds.coeffs) == [1]


def test_derivative_of_exp_is_exp():
    ds = series_derivative(PowerSeries(coeffs=[1 / math.factorial(n) for n in range(21)]))
    expected = [1 / math.factorial(n) for n in range(20)]
    np.testing.assert_allclose(ds.coeffs, expected, rtol=1e-15)


def test_derivative_needs_order_one():
    with pytest.raises(ValueError):
        series_derivative(PowerSeries(coeffs=[3]))


def test_derivatives_chain_lengths():
    chain = derivatives(EXP_SERIES, 3)
    assert [s.truncation_order for s in chain] == [30, 29, 28, 27]


@pytest.mark.parametrize(
    "series",
    [
        bessel_u_coeffs(BesselParams(p=1, b=1, c=1)),
        lommel_h_coeffs(LommelParams(mu=8, p=3)),
    ],
    ids=["u_1_1_1", "h_8_3"],
)
def test_derivative_matches_central_difference(series):
    rng = np.random.default_rng(7)
    points = 0.9 * np.sqrt(rng.uniform(0, 1, 20)) * np.exp(2j * np.pi * rng.uniform(0, 1, 20))
    step = 1e-6
    ds = series_derivative(series)
    for z in points:
        numeric = (series_eval(series, z + step) - series_eval(series, z - step)) / (2 * step)
        assert abs(series_eval(ds, z) - numeric) <= 1e-7


def test_multiply_and_divide_by_z_are_inverse():
    s = PowerSeries(coeffs=[1, 2, 3])
    zs = multiply_by_z(s)
    assert list(zs.coeffs) == [0, 1, 2, 3]
    assert list(divide_by_z(zs).coeffs) == [1, 2, 3]


def test_divide_by_z_needs_zero_constant():
    with pytest.raises(SeriesDomainError):
        divide_by_z(PowerSeries(coeffs=[1, 2]))


def test_scale_multiplies_hint():
    s = scale(PowerSeries(coeffs=[1, 2], tail_bound_hint=0.5), -2)
    assert list(s.coeffs) == [-2, -4]
    assert s.tail_bound_hint == 1.0


def test_tail_hint_geometric():
    assert tail_hint(0.5, 0.5) == 1.0
    assert tail_hint(1.0, 1.0) == float("inf")
