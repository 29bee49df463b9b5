"""Sufficient-condition slacks for the lemniscate theorems, the |h'| lower bound,
and theorem-level consistency reports pairing each condition with its verdict.

A slack is positive exactly when the sufficient condition holds. A report is
inconsistent only when the condition holds and a conclusive verdict fails;
a failing condition says nothing about the verdict.
"""

from __future__ import annotations

import logging
import math
from enum import Enum
from typing import Optional

from app.errors import FamilyMismatchError, PreconditionError
from app.lemniscate import DEFAULT_PLAN, real_part_check, subordination_check
from app.models import (
    BESSEL_THEOREMS,
    LOMMEL_THEOREMS,
    BesselParams,
    DiskSamplingPlan,
    FunctionalKind,
    LommelParams,
    Params,
    PowerSeries,
    TheoremId,
    TheoremReport,
)
from app.series import derivatives, multiply_by_z
from app.special import bessel_u_coeffs, lommel_h_coeffs
from app.transforms import alexander, libera

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

# sqrt(9/8 + 1/sqrt 2), written in its exact square-free form
LEMNISCATE_RADIUS = 1.0 + 1.0 / (2.0 * SQRT2)

# Right-hand sides of the h and f convexity conditions
H_CONVEX_RHS = 13 * SQRT3 / 4 - 15 / (8 * SQRT2) + 0.5
F_CONVEX_RHS = 13 * SQRT3 / 4 - 15 / (8 * SQRT2) + 0.25


class CorollaryPart(str, Enum):
    CONVEX = "convex"
    STARLIKE = "starlike"


def lemniscate_constant_defect() -> float:
    """(1 + 1/(2 sqrt 2))^2 - (9/8 + 1/sqrt 2); zero up to rounding."""
    return LEMNISCATE_RADIUS**2 - (9 / 8 + 1 / SQRT2)


def lommel_q(params: LommelParams) -> complex:
    """((mu+1)^2 - p^2)/4."""
    return ((params.mu + 1) ** 2 - params.p**2) / 4


def _require_family(theorem_id: TheoremId, params: Params) -> None:
    if theorem_id in BESSEL_THEOREMS and not isinstance(params, BesselParams):
        raise FamilyMismatchError(f"{theorem_id.value} needs Bessel parameters (p, b, c)")
    if theorem_id in LOMMEL_THEOREMS and not isinstance(params, LommelParams):
        raise FamilyMismatchError(f"{theorem_id.value} needs Lommel parameters (mu, p)")


def _require_c_nonzero(theorem_id: TheoremId, params: BesselParams) -> None:
    if params.c == 0:
        raise PreconditionError(f"{theorem_id.value} requires c != 0")


def t5_slack(params: LommelParams, divisor: float = 2.0) -> float:
    """Re mu/(2 sqrt 2) + 3/(8 sqrt 2) - sqrt3 |((mu+1)^2 - p^2)/divisor|, capped by Re mu + 1."""
    mu = params.mu
    main = (
        mu.real / (2 * SQRT2)
        + 3 / (8 * SQRT2)
        - SQRT3 * abs(((mu + 1) ** 2 - params.p**2) / divisor)
    )
    return min(main, mu.real + 1)


def condition_slack(theorem_id: TheoremId, params: Params) -> float:
    _require_family(theorem_id, params)

    if isinstance(params, BesselParams):
        kappa, c = params.kappa, params.c
        if theorem_id is TheoremId.T1_U_PRIME:
            _require_c_nonzero(theorem_id, params)
            return kappa.real - max(0.0, abs(c) - 0.75)
        if theorem_id is TheoremId.T2_U_CONVEX:
            _require_c_nonzero(theorem_id, params)
            return LEMNISCATE_RADIUS - (SQRT3 * abs(kappa - 2) + abs(c) / 4)
        if theorem_id is TheoremId.C1_ZU_STARLIKE:
            return LEMNISCATE_RADIUS - (SQRT3 * abs(kappa - 3) + abs(c) / 4)
        if theorem_id is TheoremId.L1_U_POSITIVE_REAL:
            return kappa.real - (abs(c) / 4 + 1)

    else:
        mu = params.mu
        lhs = 3 * mu.real / (2 * SQRT2) - SQRT3 * abs(lommel_q(params) - 2 * mu - 2)
        if theorem_id in (
            TheoremId.T3_H_CONVEX,
            TheoremId.C2_ZH_PRIME_STARLIKE,
            TheoremId.C3_LIBERA_H_CONVEX,
        ):
            return lhs - H_CONVEX_RHS
        if theorem_id is TheoremId.T4_F_CONVEX:
            return lhs - F_CONVEX_RHS
        if theorem_id is TheoremId.T5_F_PRIME:
            return t5_slack(params, divisor=2.0)

    raise ValueError(f"unknown theorem {theorem_id!r}")


def jp_corollary_slack(p: float, part: CorollaryPart = CorollaryPart.CONVEX) -> float:
    """Slack of |p - 1| sqrt3 < sqrt(9/8 + 1/sqrt 2) - 1/4 (or |p - 2| for starlikeness)."""
    shift = 1 if part is CorollaryPart.CONVEX else 2
    return LEMNISCATE_RADIUS - 0.25 - SQRT3 * abs(p - shift)


def hprime_lower_bound(params: LommelParams) -> float:
    """(2MN - 4M - 3N) / (N (2M - 3)), a lower bound for |h'_{mu,p}| on the disk."""
    if not params.is_real:
        raise PreconditionError("the |h'| bound needs real mu and p")
    m, n = params.M.real, params.N.real
    if m <= 1.5:
        raise PreconditionError(f"the |h'| bound needs M > 3/2, got M = {m:g}")
    if n == 0:
        raise PreconditionError("the |h'| bound needs N != 0")
    return (2 * m * n - 4 * m - 3 * n) / (n * (2 * m - 3))


# (series, functional, scale) checked for each theorem
def _check_target(
    theorem_id: TheoremId, params: Params
) -> tuple[PowerSeries, FunctionalKind, Optional[complex]]:
    if isinstance(params, BesselParams):
        u = bessel_u_coeffs(params)
        if theorem_id is TheoremId.T1_U_PRIME:
            return u, FunctionalKind.CARATHEODORY_SCALED, -4 * params.kappa / params.c
        if theorem_id is TheoremId.T2_U_CONVEX:
            return u, FunctionalKind.CONVEXITY, None
        if theorem_id is TheoremId.C1_ZU_STARLIKE:
            return multiply_by_z(u), FunctionalKind.STARLIKENESS, None
        if theorem_id is TheoremId.L1_U_POSITIVE_REAL:
            return u, FunctionalKind.REAL_PART, None
    else:
        h = lommel_h_coeffs(params)
        if theorem_id is TheoremId.T3_H_CONVEX:
            return h, FunctionalKind.CONVEXITY, None
        if theorem_id is TheoremId.T4_F_CONVEX:
            return alexander(h), FunctionalKind.CONVEXITY, None
        if theorem_id is TheoremId.T5_F_PRIME:
            # f' = h/z for f = A[h]
            return alexander(h), FunctionalKind.CARATHEODORY_SCALED, 1
        if theorem_id is TheoremId.C2_ZH_PRIME_STARLIKE:
            _, dh = derivatives(h, 1)
            return multiply_by_z(dh), FunctionalKind.STARLIKENESS, None
        if theorem_id is TheoremId.C3_LIBERA_H_CONVEX:
            return libera(h), FunctionalKind.CONVEXITY, None
    raise ValueError(f"unknown theorem {theorem_id!r}")


def verify_theorem(
    theorem_id: TheoremId,
    params: Params,
    plan: DiskSamplingPlan = DEFAULT_PLAN,
) -> TheoremReport:
    slack = condition_slack(theorem_id, params)
    aux: dict[str, float] = {}
    if theorem_id is TheoremId.T5_F_PRIME:
        aux = {
            "statement_divisor_2": slack,
            "proof_divisor_4": t5_slack(params, divisor=4.0),  # type: ignore[arg-type]
        }

    series, kind, scale = _check_target(theorem_id, params)
    if kind is FunctionalKind.REAL_PART:
        verdict = real_part_check(series, plan)
    else:
        verdict = subordination_check(kind, series, scale, plan)

    condition_holds = slack > 0
    consistent = not (condition_holds and not verdict.holds and not verdict.inconclusive)
    if not consistent:
        logger.error(
            "%s counterexample: slack %.6g but %s margin %.6g at z = %r",
            theorem_id.value,
            slack,
            kind.value,
            verdict.min_margin,
            verdict.worst_z,
        )
    else:
        logger.info(
            "%s slack=%.6g holds=%s inconclusive=%s",
            theorem_id.value,
            slack,
            verdict.holds,
            verdict.inconclusive,
        )

    return TheoremReport(
        theorem_id=theorem_id,
        params=params.model_dump(),
        condition_holds=condition_holds,
        condition_slack=slack,
        aux_slacks=aux,
        check_kind=kind,
        verdict=verdict,
        consistent=consistent,
    )
