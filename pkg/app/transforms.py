"""Alexander, Libera and Hadamard operators as exact coefficient maps."""

from __future__ import annotations

import logging
from enum import Enum

import numpy as np

from app.config import DEFAULT_TRUNCATION_ORDER
from app.errors import SeriesDomainError
from app.models import LommelParams, PowerSeries
from app.series import derivatives, series_eval
from app.special import check_order, check_point, lommel_h_coeffs

logger = logging.getLogger(__name__)

_A0_TOLERANCE = 1e-14


class KernelKind(str, Enum):
    IDENTITY = "identity"
    ALEXANDER = "alexander"
    LIBERA = "libera"


def _require_normalized(s: PowerSeries, operator: str) -> None:
    if abs(s.coeffs[0]) >= _A0_TOLERANCE:
        raise SeriesDomainError(
            f"{operator} needs coefficient a0 = 0, got |a0| = {abs(s.coeffs[0]):.3e}"
        )


def alexander(s: PowerSeries) -> PowerSeries:
    """A[f](z) = int_0^z f(t)/t dt: a_n -> a_n / n."""
    _require_normalized(s, "alexander")
    out = np.zeros_like(s.coeffs)
    n = np.arange(1, s.coeffs.size)
    out[1:] = s.coeffs[1:] / n
    return PowerSeries(coeffs=out, tail_bound_hint=s.tail_bound_hint)


def libera(s: PowerSeries) -> PowerSeries:
    """L[f](z) = (2/z) int_0^z f(t) dt: a_n -> 2 a_n / (n + 1)."""
    _require_normalized(s, "libera")
    out = np.zeros_like(s.coeffs)
    n = np.arange(1, s.coeffs.size)
    out[1:] = 2 * s.coeffs[1:] / (n + 1)
    return PowerSeries(coeffs=out, tail_bound_hint=s.tail_bound_hint)


def hadamard(s1: PowerSeries, s2: PowerSeries) -> PowerSeries:
    """Coefficientwise product, truncated to the shorter series."""
    size = min(s1.coeffs.size, s2.coeffs.size)
    if s1.coeffs.size != s2.coeffs.size:
        logger.debug(
            "hadamard truncating orders %d and %d to %d",
            s1.truncation_order,
            s2.truncation_order,
            size - 1,
        )
    return PowerSeries(
        coeffs=s1.coeffs[:size] * s2.coeffs[:size],
        tail_bound_hint=s1.tail_bound_hint + s2.tail_bound_hint,
    )


def kernel_series(kind: KernelKind, N: int = DEFAULT_TRUNCATION_ORDER) -> PowerSeries:
    """Convolution kernels z/(1-z), -log(1-z) and -2(z + log(1-z))/z through z^N.

    The kernels are not summable on |z| = 1; their coefficients are bounded by 1,
    so the hint is 0 and a Hadamard product carries the other factor's hint.
    """
    check_order(N)
    n = np.arange(N + 1, dtype=float)
    coeffs = np.zeros(N + 1, dtype=complex)
    if kind is KernelKind.IDENTITY:
        coeffs[1:] = 1.0
    elif kind is KernelKind.ALEXANDER:
        coeffs[1:] = 1.0 / n[1:]
    elif kind is KernelKind.LIBERA:
        coeffs[1:] = 2.0 / (n[1:] + 1)
    else:
        raise ValueError(f"unknown kernel {kind!r}")
    return PowerSeries(coeffs=coeffs, tail_bound_hint=0.0)


def f_series(params: LommelParams, N: int = DEFAULT_TRUNCATION_ORDER) -> PowerSeries:
    """f_{mu,p} = A[h_{mu,p}]."""
    return alexander(lommel_h_coeffs(params, N))


def f_ode_residual(params: LommelParams, z: complex) -> float:
    """|z^2 f''' + (mu+2) z f'' + (Q + z/4) f' - Q| with Q = ((mu+1)^2 - p^2)/4."""
    check_point(z)
    _, df, d2f, d3f = (series_eval(s, z) for s in derivatives(f_series(params), 3))
    mu, p = params.mu, params.p
    q = ((mu + 1) ** 2 - p**2) / 4
    return abs(z**2 * d3f + (mu + 2) * z * d2f + (q + z / 4) * df - q)
