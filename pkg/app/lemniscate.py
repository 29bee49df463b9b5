"""Membership in the right lemniscate loop {w : |w^2 - 1| < 1, Re w > 0} and the
subordination-to-sqrt(1+z) verdicts built on it.

A function is checked by sampling its functional (convexity, starlikeness or a
scaled Caratheodory value) on the circles of a DiskSamplingPlan and taking the
worst membership margin. The plan's circles run from small to large radius, so
the per-radius margins also expose the r -> 1 trend.
"""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np

from app.config import DENOMINATOR_GUARD, MARGIN_THRESHOLD
from app.errors import NearZeroDenominatorError
from app.models import DiskSamplingPlan, FunctionalKind, PowerSeries, SubordinationVerdict
from app.series import derivatives, divide_by_z, series_eval_many

logger = logging.getLogger(__name__)

DEFAULT_PLAN = DiskSamplingPlan()


def right_lemniscate_margin(w: complex) -> float:
    """min(1 - |w^2 - 1|, Re w); positive iff w = sqrt(1+z) for some |z| < 1."""
    return min(1.0 - abs(w * w - 1.0), w.real)


def lemniscate_margins(values: np.ndarray) -> np.ndarray:
    return np.minimum(1.0 - np.abs(values * values - 1.0), values.real)


def lemniscate_preimage(w: complex) -> complex:
    """z = w^2 - 1, so sqrt(1+z) = w for w in the right loop."""
    return w * w - 1


def _guard(denominator: np.ndarray, points: np.ndarray) -> None:
    modulus = np.abs(denominator)
    tripped = modulus <= DENOMINATOR_GUARD
    if np.any(tripped):
        first = int(np.argmax(tripped))
        raise NearZeroDenominatorError(complex(points[first]), float(modulus[first]))


def functional_values(
    kind: FunctionalKind,
    f: PowerSeries,
    params_scale: Optional[complex],
    points: np.ndarray,
) -> np.ndarray:
    """The functional of ``f`` at every point, in point order.

    convexity            1 + z f''/f'
    starlikeness         z f'/f, computed as 1 + z g'/g with g = f/z
    caratheodory_scaled  params_scale * f'
    real_part            f itself (its real part is the margin)
    """
    points = np.asarray(points, dtype=complex)
    if kind is FunctionalKind.CONVEXITY:
        _, df, d2f = (series_eval_many(s, points) for s in derivatives(f, 2))
        _guard(df, points)
        return 1 + points * d2f / df
    if kind is FunctionalKind.STARLIKENESS:
        g, dg = (series_eval_many(s, points) for s in derivatives(divide_by_z(f), 1))
        _guard(g, points)
        return 1 + points * dg / g
    if kind is FunctionalKind.CARATHEODORY_SCALED:
        scale = 1 if params_scale is None else params_scale
        _, df = derivatives(f, 1)
        return scale * series_eval_many(df, points)
    if kind is FunctionalKind.REAL_PART:
        return series_eval_many(f, points)
    raise ValueError(f"unknown functional kind {kind!r}")


def functional_value(
    kind: FunctionalKind,
    f: PowerSeries,
    params_scale: Optional[complex],
    z: complex,
) -> complex:
    return complex(functional_values(kind, f, params_scale, np.array([z], dtype=complex))[0])


def _margins_for(kind: FunctionalKind, values: np.ndarray) -> np.ndarray:
    if kind is FunctionalKind.REAL_PART:
        return values.real.copy()
    return lemniscate_margins(values)


def subordination_check(
    kind: FunctionalKind,
    f: PowerSeries,
    params_scale: Optional[complex] = None,
    plan: DiskSamplingPlan = DEFAULT_PLAN,
    threshold: float = MARGIN_THRESHOLD,
) -> SubordinationVerdict:
    """Range-inclusion verdict for the functional of ``f`` over ``plan``.

    A tripped denominator guard or a non-finite functional value gives an
    inconclusive verdict rather than a failing one.
    """
    points = plan.sample_points()
    try:
        values = functional_values(kind, f, params_scale, points)
    except NearZeroDenominatorError as exc:
        logger.warning("%s check inconclusive: %s", kind.value, exc)
        return SubordinationVerdict(
            holds=False,
            functional_kind=kind,
            worst_z=exc.z,
            threshold=threshold,
            inconclusive=True,
            detail=str(exc),
        )

    if not np.all(np.isfinite(values)):
        bad = complex(points[int(np.argmin(np.isfinite(values)))])
        logger.warning("%s check inconclusive: non-finite value at z = %r", kind.value, bad)
        return SubordinationVerdict(
            holds=False,
            functional_kind=kind,
            worst_z=bad,
            threshold=threshold,
            inconclusive=True,
            detail=f"non-finite functional value at z = {bad!r}",
        )

    margins = _margins_for(kind, values)
    worst = int(np.argmin(margins))
    min_margin = float(margins[worst])
    per_radius = margins.reshape(len(plan.radii), plan.points_per_circle).min(axis=1)
    radius_margins = [float(m) for m in per_radius]
    monotone = all(b <= a for a, b in zip(radius_margins, radius_margins[1:]))
    if not monotone:
        logger.warning(
            "%s margins not nonincreasing across radii %s: %s",
            kind.value,
            plan.radii,
            radius_margins,
        )

    return SubordinationVerdict(
        holds=min_margin > threshold,
        functional_kind=kind,
        min_margin=min_margin,
        worst_z=complex(points[worst]),
        threshold=threshold,
        radius_margins=radius_margins,
        margin_monotone=monotone,
        max_abs_arg=float(np.max(np.abs(np.angle(values)))),
    )


def real_part_check(
    f: PowerSeries,
    plan: DiskSamplingPlan = DEFAULT_PLAN,
    threshold: float = MARGIN_THRESHOLD,
) -> SubordinationVerdict:
    """min Re f over the plan, reported as a verdict on Re f > threshold."""
    return subordination_check(FunctionalKind.REAL_PART, f, None, plan, threshold)


def strongly_convex_of_order_half(verdict: SubordinationVerdict) -> bool:
    """Whether a holding convexity verdict also keeps |arg P| below pi/4."""
    if not verdict.holds or verdict.max_abs_arg is None:
        return False
    return verdict.max_abs_arg < math.pi / 4 + 1e-9
