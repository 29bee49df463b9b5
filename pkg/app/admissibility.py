"""Admissible triples (r, s, t) and the proof-specific psi functions.

Each theorem's proof shows psi(r, s, t; z) stays away from the lemniscate
target set by bounding |psi| from below at every admissible triple. The scan
samples triples on (and just inside) the constraint boundary for t and reports
the smallest |psi| next to the analytic bound for the same parameters.
"""

from __future__ import annotations

import logging
import math
from typing import Union

import numpy as np

from app.config import (
    ADMISSIBILITY_TOLERANCE,
    DEFAULT_M_GRID,
    DEFAULT_M_MAX,
    DEFAULT_SCAN_STEP,
    DEFAULT_THETA_GRID,
    DEFAULT_Z_SAMPLES,
    LOMMEL_MU_RANGE,
    LOMMEL_P_RANGE,
    THETA_CLAMP,
)
from app.errors import ConditionNotSatisfiedError, FamilyMismatchError, PreconditionError
from app.models import (
    AdmissibilityReport,
    AdmissibleTriple,
    Axis,
    BesselParams,
    LommelParams,
    Params,
    ProofId,
    TheoremId,
)
from app.theorems import LEMNISCATE_RADIUS, SQRT2, SQRT3, condition_slack, lommel_q, t5_slack

logger = logging.getLogger(__name__)

ArrayOrScalar = Union[np.ndarray, complex]

PROOF_THEOREM: dict[ProofId, TheoremId] = {
    ProofId.P1: TheoremId.T1_U_PRIME,
    ProofId.P2: TheoremId.T2_U_CONVEX,
    ProofId.P3: TheoremId.T3_H_CONVEX,
    ProofId.P4: TheoremId.T4_F_CONVEX,
    ProofId.P5: TheoremId.T5_F_PRIME,
}

# Re((t+s)e^{-3i theta}) offsets sampled per (theta, m): the boundary and one interior slice
T_OFFSETS = (0.0, 1.0)


def _require_family(proof_id: ProofId, params: Params) -> None:
    bessel = proof_id in (ProofId.P1, ProofId.P2)
    if bessel and not isinstance(params, BesselParams):
        raise FamilyMismatchError(f"{proof_id.value} needs Bessel parameters (p, b, c)")
    if not bessel and not isinstance(params, LommelParams):
        raise FamilyMismatchError(f"{proof_id.value} needs Lommel parameters (mu, p)")


def _psi(
    proof_id: ProofId,
    params: Params,
    r: ArrayOrScalar,
    s: ArrayOrScalar,
    t: ArrayOrScalar,
    z: ArrayOrScalar,
) -> ArrayOrScalar:
    if isinstance(params, BesselParams):
        kappa, c = params.kappa, params.c
        if proof_id is ProofId.P1:
            return 4 * t + 4 * (kappa + 1) * s + c * z * r
        if proof_id is ProofId.P2:
            rm1 = r - 1
            return 4 * (s - rm1 + rm1**2) + 4 * (kappa + 1) * rm1 + c * z

    else:
        mu, q = params.mu, lommel_q(params)
        if proof_id in (ProofId.P3, ProofId.P4):
            rm1 = r - 1
            core = (
                t
                + s
                + 3 * r * s
                + (mu - 2) * s
                + (mu + 1) * (r**2 - 1)
                + rm1**3
                + rm1 * (q - 2 * mu - 2 + z / 4)
            )
            return core + (z / 2 if proof_id is ProofId.P3 else z / 4)
        if proof_id is ProofId.P5:
            return t + (mu + 2) * s + (z / 4 + q) * r - q

    raise ValueError(f"unknown proof {proof_id!r}")


def psi_value(proof_id: ProofId, params: Params, triple: AdmissibleTriple, z: complex) -> complex:
    _require_family(proof_id, params)
    if abs(z) > 1 + 1e-12:
        raise PreconditionError(f"psi is evaluated for |z| <= 1, got |z| = {abs(z):.6g}")
    return complex(_psi(proof_id, params, triple.r, triple.s, triple.t, complex(z)))


def paper_bound(proof_id: ProofId, params: Params) -> float:
    """The lower bound on |psi| that closes each proof's chain of inequalities."""
    _require_family(proof_id, params)
    if isinstance(params, BesselParams):
        kappa, c = params.kappa, params.c
        if proof_id is ProofId.P1:
            return 4 * (3 / (8 * SQRT2) + kappa.real / (2 * SQRT2) - SQRT2 * abs(c) / 4)
        return 4 * (LEMNISCATE_RADIUS - SQRT3 * abs(kappa - 2) - abs(c) / 4)

    mu = params.mu.real
    spread = SQRT3 * abs(lommel_q(params) - 2 * params.mu - 2)
    base = 15 / (8 * SQRT2) + 3 * mu / (2 * SQRT2) - spread - 13 * SQRT3 / 4
    if proof_id is ProofId.P3:
        return base - 0.5
    if proof_id is ProofId.P4:
        return base - 0.25
    # the proof's chain ends with the divisor-4 form of the condition
    return t5_slack(params, divisor=4.0)


def theta_grid(count: int) -> np.ndarray:
    edge = math.pi / 4 - THETA_CLAMP
    return np.linspace(-edge, edge, count)


def admissibility_scan(
    proof_id: ProofId,
    params: Params,
    theta_count: int = DEFAULT_THETA_GRID,
    m_max: float = DEFAULT_M_MAX,
    z_samples: int = DEFAULT_Z_SAMPLES,
    m_count: int = DEFAULT_M_GRID,
) -> AdmissibilityReport:
    """Minimum |psi| over theta x m x t-offset x z, with the proof's analytic bound."""
    _require_family(proof_id, params)
    if theta_count < 2 or m_count < 2 or z_samples < 1:
        raise PreconditionError("the admissibility grid needs >= 2 thetas, >= 2 m values and >= 1 z")
    if m_max <= 1:
        raise PreconditionError(f"m_max must exceed 1, got {m_max:g}")
    if proof_id in (ProofId.P3, ProofId.P4) and not params.is_real:  # type: ignore[union-attr]
        raise PreconditionError(f"{proof_id.value} is stated for real mu and p")

    theorem_id = PROOF_THEOREM[proof_id]
    slack = condition_slack(theorem_id, params)
    if slack <= 0:
        raise ConditionNotSatisfiedError(
            f"{proof_id.value} scan needs the {theorem_id.value} condition; slack = {slack:.6g}"
        )

    thetas = theta_grid(theta_count)
    ms = np.linspace(1.0, m_max, m_count)
    offsets = np.asarray(T_OFFSETS)
    zs = np.exp(2j * np.pi * np.arange(z_samples) / z_samples)

    # axes: theta, m, offset, z
    theta = thetas[:, None, None, None]
    m = ms[None, :, None, None]
    offset = offsets[None, None, :, None]
    z = zs[None, None, None, :]

    root = np.sqrt(2 * np.cos(2 * theta))
    phase = np.exp(3j * theta)
    r = root * np.exp(1j * theta)
    s = m * phase / (2 * root)
    t = (3 * m**2 / (8 * root) + offset) * phase - s

    abs_psi = np.abs(_psi(proof_id, params, r, s, t, z))
    i, j, k, l = np.unravel_index(int(np.argmin(abs_psi)), abs_psi.shape)
    min_abs_psi = float(abs_psi[i, j, k, l])

    triple_shape = (theta_count, m_count, len(offsets))
    s_r2 = np.broadcast_to(np.abs(s + r**2 - 1) ** 2, triple_shape + (1,))
    r_m1 = np.broadcast_to(np.abs(r - 1) ** 2, triple_shape + (1,))

    arg_min = AdmissibleTriple.on_boundary(float(thetas[i]), float(ms[j]), float(offsets[k]))
    bound = paper_bound(proof_id, params)
    report = AdmissibilityReport(
        proof_id=proof_id,
        params=params.model_dump(),
        min_abs_psi=min_abs_psi,
        arg_min=arg_min,
        arg_min_z=complex(zs[l]),
        paper_bound=bound,
        min_s_r2_sq=float(s_r2.min()),
        max_r_minus_1_sq=float(r_m1.max()),
        m_max=m_max,
        m_cap_validated=bool(ms[j] < m_max / 2),
        n_triples=int(np.prod(triple_shape)),
        tolerance=ADMISSIBILITY_TOLERANCE,
    )
    logger.info(
        "%s min|psi|=%.6g bound=%.6g at theta=%.4f m=%.3f ok=%s",
        proof_id.value,
        min_abs_psi,
        bound,
        arg_min.theta,
        arg_min.m,
        report.ok,
    )
    return report


def intermediate_bounds_hold(report: AdmissibilityReport) -> bool:
    """|s + r^2 - 1|^2 >= 9/8 + 1/sqrt 2 and |r - 1|^2 <= 3 over the scanned triples."""
    return (
        report.min_s_r2_sq >= 9 / 8 + 1 / SQRT2 - ADMISSIBILITY_TOLERANCE
        and report.max_r_minus_1_sq <= 3 + ADMISSIBILITY_TOLERANCE
    )


def mu_exceeds_two_check(
    mu_axis: Axis = Axis(name="mu", min=LOMMEL_MU_RANGE[0], max=LOMMEL_MU_RANGE[1], step=DEFAULT_SCAN_STEP),
    p_axis: Axis = Axis(name="p", min=LOMMEL_P_RANGE[0], max=LOMMEL_P_RANGE[1], step=DEFAULT_SCAN_STEP),
) -> list[tuple[float, float]]:
    """Grid cells where the h-convexity condition holds but mu <= 2 (expected: none)."""
    violations = []
    satisfied = 0
    for mu in mu_axis.values():
        for p in p_axis.values():
            try:
                params = LommelParams(mu=mu, p=p)
            except ValueError:
                continue
            if condition_slack(TheoremId.T3_H_CONVEX, params) > 0:
                satisfied += 1
                if mu <= 2:
                    violations.append((mu, p))
    logger.info(
        "mu > 2 check: %d cells satisfy the condition, %d violations", satisfied, len(violations)
    )
    return violations
