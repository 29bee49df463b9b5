"""Pochhammer/gamma evaluation and truncated power-series arithmetic.

Evaluation sums terms in ascending n with Neumaier compensation, vectorized
over the evaluation points. The number of summed terms depends only on the
coefficients, so a point takes the same terms alone or in a batch.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy import special

from app.config import CERTIFY_RATIO, EVALUATION_RADIUS
from app.errors import (
    EvaluationDomainError,
    PoleError,
    SeriesDomainError,
    ToleranceNotMetError,
)
from app.models import PowerSeries, TruncationControl, distance_to_nonpositive_integer

logger = logging.getLogger(__name__)

_DEFAULT_CONTROL = TruncationControl()

# Terms below abs_tol * NEGLIGIBLE on the evaluation disk are not summed
NEGLIGIBLE = 1e-6


def pochhammer(lam: complex, n: int) -> complex:
    """Ascending factorial (lam)_n = lam (lam+1) ... (lam+n-1); (lam)_0 = 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = 1 + 0j
    for k in range(n):
        result *= lam + k
    return result


def gamma(z: complex) -> complex:
    """Euler gamma on the right half-plane (scipy's complex loggamma path)."""
    z = complex(z)
    if z.imag == 0 and distance_to_nonpositive_integer(z) == 0:
        raise PoleError(f"gamma has a pole at z = {z.real:g}")
    value = complex(special.gamma(z))
    if not np.isfinite(value):
        raise PoleError(f"gamma overflowed or hit a pole at z = {z!r}")
    return value


def tail_hint(next_coefficient: complex, ratio: float) -> float:
    """Geometric tail bound |a_{N+1}| / (1 - ratio) on the closed unit disk."""
    if ratio >= 1:
        return float("inf")
    return abs(next_coefficient) / (1 - ratio)


def _check_domain(points: np.ndarray) -> None:
    too_far = np.abs(points) > EVALUATION_RADIUS
    if np.any(too_far):
        bad = complex(points[np.argmax(too_far)])
        raise EvaluationDomainError(
            f"|z| = {abs(bad):.6g} exceeds the evaluation radius {EVALUATION_RADIUS} at z = {bad!r}"
        )


def series_eval_many(
    s: PowerSeries,
    points: np.ndarray,
    ctl: TruncationControl = _DEFAULT_CONTROL,
) -> np.ndarray:
    """Evaluate s at every point; raises if any point's tail is not certified."""
    points = np.asarray(points, dtype=complex)
    _check_domain(points)

    coeffs = s.coeffs[: ctl.max_terms]
    length = _significant_length(coeffs, ctl)
    total = np.zeros(points.shape, dtype=complex)
    compensation = np.zeros(points.shape, dtype=complex)
    power = np.ones(points.shape, dtype=complex)
    magnitudes = np.empty((length,) + points.shape)

    for n in range(length):
        term = coeffs[n] * power
        magnitudes[n] = np.abs(term)
        # Neumaier step, real and imaginary parts independently
        candidate = total + term
        big = np.abs(total.real) >= np.abs(term.real)
        comp_re = np.where(
            big,
            (total.real - candidate.real) + term.real,
            (term.real - candidate.real) + total.real,
        )
        big = np.abs(total.imag) >= np.abs(term.imag)
        comp_im = np.where(
            big,
            (total.imag - candidate.imag) + term.imag,
            (term.imag - candidate.imag) + total.imag,
        )
        compensation += comp_re + 1j * comp_im
        total = candidate
        power = power * points

    if s.coeffs.size > ctl.max_terms and not _dropped_terms_negligible(s.coeffs, length, ctl):
        _certify_tail(magnitudes, points, ctl)
    return total + compensation


def _significant_length(coeffs: np.ndarray, ctl: TruncationControl) -> int:
    """Number of leading terms that can matter anywhere in the evaluation disk.

    Independent of the points, so a point gets the same sum alone or in a batch.

    Keeps one term past the last term of modulus >= abs_tol * NEGLIGIBLE so the
    ratio test always sees a following term.
    """
    weights = np.abs(coeffs) * EVALUATION_RADIUS ** np.arange(coeffs.size)
    significant = np.nonzero(weights >= ctl.abs_tol * NEGLIGIBLE)[0]
    if significant.size == 0:
        return min(2, coeffs.size)
    return min(int(significant[-1]) + 2, coeffs.size)


def _dropped_terms_negligible(coeffs: np.ndarray, length: int, ctl: TruncationControl) -> bool:
    """True when every coefficient past ``length`` is zero or negligible on the evaluation disk."""
    weights = np.abs(coeffs[length:]) * EVALUATION_RADIUS ** np.arange(length, coeffs.size)
    return bool(np.all(weights < ctl.abs_tol * NEGLIGIBLE))


def _certify_tail(magnitudes: np.ndarray, points: np.ndarray, ctl: TruncationControl) -> None:
    """Require some n with |t_n| < abs_tol and |t_{n+1}| < ratio * |t_n| (or both zero)."""
    current, following = magnitudes[:-1], magnitudes[1:]
    small = current < ctl.abs_tol
    decaying = (following < CERTIFY_RATIO * current) | ((current == 0) & (following == 0))
    certified = np.any(small & decaying, axis=0)
    if not np.all(certified):
        bad = complex(points[np.argmin(certified)])
        raise ToleranceNotMetError(
            f"ratio test did not certify the tail within {ctl.max_terms} terms at z = {bad!r}"
        )


def series_eval(
    s: PowerSeries, z: complex, ctl: TruncationControl = _DEFAULT_CONTROL
) -> complex:
    return complex(series_eval_many(s, np.array([z], dtype=complex), ctl)[0])


def series_derivative(s: PowerSeries) -> PowerSeries:
    """Coefficient n of the result is (n+1) a_{n+1}; the order drops by one."""
    if s.truncation_order < 1:
        raise ValueError("derivative needs truncation_order >= 1")
    n = np.arange(1, s.coeffs.size)
    # d/dz of the tail is bounded by the same geometric hint scaled by the order
    return PowerSeries(
        coeffs=n * s.coeffs[1:],
        tail_bound_hint=s.tail_bound_hint * (s.truncation_order + 1),
    )


def derivatives(s: PowerSeries, count: int) -> list[PowerSeries]:
    """[s, s', ..., s^(count)]."""
    out = [s]
    for _ in range(count):
        out.append(series_derivative(out[-1]))
    return out


def multiply_by_z(s: PowerSeries) -> PowerSeries:
    return PowerSeries(
        coeffs=np.concatenate(([0j], s.coeffs)), tail_bound_hint=s.tail_bound_hint
    )


def divide_by_z(s: PowerSeries) -> PowerSeries:
    if abs(s.coeffs[0]) >= 1e-14:
        raise SeriesDomainError("dividing by z needs a0 = 0")
    if s.truncation_order < 1:
        raise SeriesDomainError("dividing by z needs truncation_order >= 1")
    return PowerSeries(coeffs=s.coeffs[1:], tail_bound_hint=s.tail_bound_hint)


def scale(s: PowerSeries, factor: complex) -> PowerSeries:
    return PowerSeries(coeffs=factor * s.coeffs, tail_bound_hint=abs(factor) * s.tail_bound_hint)
