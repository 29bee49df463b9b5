"""The generalized Bessel function u_{p,b,c}, its classical normalizations and
trigonometric closed forms, the normalized Lommel function h_{mu,p}, and the
residuals of their defining recurrences and differential equations."""

from __future__ import annotations

import cmath
import logging
import math
from enum import Enum

import numpy as np

from app.config import DEFAULT_TRUNCATION_ORDER, EVALUATION_RADIUS, MAX_TRUNCATION_ORDER
from app.errors import EvaluationDomainError, InvalidParameterError
from app.models import BesselParams, LommelParams, PowerSeries
from app.series import derivatives, gamma, series_eval, tail_hint

logger = logging.getLogger(__name__)


class ClosedForm(str, Enum):
    SINC_SQRT = "sinc_sqrt"
    SINHC_SQRT = "sinhc_sqrt"
    J32_COMBO = "j32_combo"


def check_order(N: int) -> None:
    if not 1 <= N <= MAX_TRUNCATION_ORDER:
        raise InvalidParameterError(f"truncation order N must lie in [1, {MAX_TRUNCATION_ORDER}], got {N}")


def check_point(z: complex) -> None:
    if abs(z) > EVALUATION_RADIUS:
        raise EvaluationDomainError(f"|z| = {abs(z):.6g} exceeds {EVALUATION_RADIUS}")


# ---------------------------------------------------------------------------
# Coefficient generators
# ---------------------------------------------------------------------------


def bessel_u_coeffs(params: BesselParams, N: int = DEFAULT_TRUNCATION_ORDER) -> PowerSeries:
    """b_n = (-c/4)^n / ((kappa)_n n!) for n = 0..N."""
    check_order(N)
    kappa, step = params.kappa, -params.c / 4
    coeffs = np.empty(N + 2, dtype=complex)
    coeffs[0] = 1.0
    for n in range(N + 1):
        coeffs[n + 1] = coeffs[n] * step / ((kappa + n) * (n + 1))
    ratio = abs(step) / (abs(kappa + N + 1) * (N + 2))
    return PowerSeries(coeffs=coeffs[:-1], tail_bound_hint=tail_hint(coeffs[-1], ratio))


def lommel_h_coeffs(params: LommelParams, N: int = DEFAULT_TRUNCATION_ORDER) -> PowerSeries:
    """z + sum_{n>=1} (-1/4)^n / ((K)_n (F)_n) z^{n+1}, truncated at z^N."""
    check_order(N)
    K, F = params.K, params.F
    coeffs = np.zeros(N + 2, dtype=complex)
    coeffs[1] = 1.0
    for n in range(1, N + 1):
        coeffs[n + 1] = coeffs[n] * (-0.25) / ((K + n - 1) * (F + n - 1))
    ratio = 0.25 / abs((K + N) * (F + N))
    return PowerSeries(coeffs=coeffs[:-1], tail_bound_hint=tail_hint(coeffs[-1], ratio))


# ---------------------------------------------------------------------------
# Closed forms and classical normalizations
# ---------------------------------------------------------------------------

# 3 (sin w/w - cos w)/w^2 = sum_n 6 (-1)^n (n+1) w^{2n} / (2n+3)!
_J32_TAYLOR = tuple(
    6 * (-1) ** n * (n + 1) / math.factorial(2 * n + 3) for n in range(8)
)


def closed_form(kind: ClosedForm, z: complex) -> complex:
    check_point(z)
    z = complex(z)
    root = cmath.sqrt(z)
    if kind is ClosedForm.SINC_SQRT:
        return 1 + 0j if root == 0 else cmath.sin(root) / root
    if kind is ClosedForm.SINHC_SQRT:
        return 1 + 0j if root == 0 else cmath.sinh(root) / root
    if kind is ClosedForm.J32_COMBO:
        # cancellation in sin w/w - cos w near 0
        if abs(z) < 1e-3:
            return sum(a * z**n for n, a in enumerate(_J32_TAYLOR))
        return 3 * (cmath.sin(root) / root - cmath.cos(root)) / z
    raise ValueError(f"unknown closed form {kind!r}")


def _normalized_first_kind(p: complex, z: complex, sign: int, tol: float = 1e-17) -> complex:
    """2^p Gamma(p+1) z^{-p/2} X_p(sqrt z), X_p summed term by term from its series.

    sign = -1 gives J_p, sign = +1 gives I_p.
    """
    check_point(z)
    p, z = complex(p), complex(z)
    prefactor = 2**p * gamma(p + 1)
    if z == 0:
        return 1 + 0j
    half_root = cmath.sqrt(z) / 2
    terms = []
    for n in range(200):
        term = sign**n / (math.factorial(n) * gamma(p + n + 1)) * half_root ** (2 * n + p)
        terms.append(term)
        if n > 2 and abs(term) <= tol * abs(terms[0]):
            break
    total = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    return prefactor * z ** (-p / 2) * total


def bessel_J_normalized(p: complex, z: complex) -> complex:
    return _normalized_first_kind(p, z, sign=-1)


def bessel_I_normalized(p: complex, z: complex) -> complex:
    return _normalized_first_kind(p, z, sign=1)


def _w_series(params: BesselParams, z: complex) -> tuple[complex, complex, complex]:
    """w_{p,b,c} and its first two derivatives, differentiated term by term.

    w(z) = sum a_n (z/2)^{2n+p} with a_n = (-c)^n / (n! Gamma(kappa + n)).
    """
    z = complex(z)
    if z == 0:
        raise EvaluationDomainError("w_{p,b,c} is evaluated away from the branch point z = 0")
    half = z / 2
    values, firsts, seconds = [], [], []
    for n in range(200):
        e = 2 * n + params.p
        a = (-params.c) ** n / (math.factorial(n) * gamma(params.kappa + n))
        term = a * half**e
        values.append(term)
        firsts.append(term * e / z)
        seconds.append(term * e * (e - 1) / z**2)
        if n > 2 and abs(term) <= 1e-17 * abs(values[0]):
            break
    return tuple(  # type: ignore[return-value]
        complex(math.fsum(t.real for t in seq), math.fsum(t.imag for t in seq))
        for seq in (values, firsts, seconds)
    )


def generalized_bessel_w(params: BesselParams, z: complex) -> complex:
    """w_{p,b,c}(z) = sum (-c)^n / (n! Gamma(p + n + (b+1)/2)) (z/2)^{2n+p}, z != 0."""
    return _w_series(params, z)[0]


def u_via_w(params: BesselParams, z: complex) -> complex:
    """u_{p,b,c}(z) = 2^p Gamma(kappa) z^{-p/2} w_{p,b,c}(sqrt z)."""
    check_point(z)
    z = complex(z)
    if z == 0:
        return 1 + 0j
    return 2**params.p * gamma(params.kappa) * z ** (-params.p / 2) * generalized_bessel_w(
        params, cmath.sqrt(z)
    )


def generalized_bessel_ode_residual(params: BesselParams, z: complex) -> float:
    """|z^2 w'' + b z w' + (c z^2 - p^2 + p(1-b)) w| / max(1, |w|), 0 < |z| <= 1."""
    if not 0 < abs(z) <= 1:
        raise EvaluationDomainError("the w residual is checked for 0 < |z| <= 1")
    w, dw, d2w = _w_series(params, z)
    p, b, c = params.p, params.b, params.c
    lhs = z**2 * d2w + b * z * dw + (c * z**2 - p**2 + p * (1 - b)) * w
    return abs(lhs) / max(1.0, abs(w))


# ---------------------------------------------------------------------------
# Residuals
# ---------------------------------------------------------------------------


def recurrence_residual(params: BesselParams, z: complex) -> float:
    """|4 kappa u'_p(z) + c u_{p+1}(z)|."""
    check_point(z)
    _, du = derivatives(bessel_u_coeffs(params), 1)
    shifted = bessel_u_coeffs(params.shifted(1))
    return abs(4 * params.kappa * series_eval(du, z) + params.c * series_eval(shifted, z))


def ode_residual_u(params: BesselParams, z: complex) -> float:
    """|4 z^2 u'' + 4 kappa z u' + c z u|."""
    check_point(z)
    u, du, d2u = (series_eval(s, z) for s in derivatives(bessel_u_coeffs(params), 2))
    return abs(4 * z**2 * d2u + 4 * params.kappa * z * du + params.c * z * u)


def ode_residual_h(params: LommelParams, z: complex) -> float:
    """|z^2 h'' + mu z h' + (((mu-1)^2 - p^2)/4 + z/4) h - (mu+1-p)(mu+1+p) z/4|.

    The h coefficient carries (mu-1)^2: the series z - z^2/(4KF) + ... fixes the
    z^1 coefficient to mu + ((mu-1)^2 - p^2)/4 = ((mu+1)^2 - p^2)/4, matching the
    right-hand side.
    """
    check_point(z)
    h, dh, d2h = (series_eval(s, z) for s in derivatives(lommel_h_coeffs(params), 2))
    mu, p = params.mu, params.p
    lhs = z**2 * d2h + mu * z * dh + (((mu - 1) ** 2 - p**2) / 4 + z / 4) * h
    rhs = (mu + 1 - p) * (mu + 1 + p) * z / 4
    return abs(lhs - rhs)
