"""The reproduction suite: every identity, constant, verdict, admissibility bound and
region-scan property the library is expected to reproduce, run as named items."""

from __future__ import annotations

import logging
import math
import time
from typing import Callable, Iterator, Optional

import numpy as np

from app.admissibility import admissibility_scan, intermediate_bounds_hold
from app.config import DEFAULT_M_GRID, DEFAULT_M_MAX, DEFAULT_THETA_GRID, DEFAULT_Z_SAMPLES
from app.lemniscate import strongly_convex_of_order_half, subordination_check
from app.models import (
    Axis,
    BesselParams,
    DiskSamplingPlan,
    FunctionalKind,
    LommelParams,
    PowerSeries,
    ProofId,
    ScanFamily,
    SubordinationVerdict,
    SuiteItemResult,
    SuiteSummary,
    TheoremId,
    distance_to_negative_odd_integer,
)
from app.scan import counterexample_cells, region_scan, sufficiency_gap_cells
from app.series import derivatives, multiply_by_z, series_eval_many
from app.special import (
    ClosedForm,
    bessel_u_coeffs,
    closed_form,
    lommel_h_coeffs,
    ode_residual_h,
    ode_residual_u,
    recurrence_residual,
)
from app.theorems import (
    condition_slack,
    hprime_lower_bound,
    lemniscate_constant_defect,
    verify_theorem,
)
from app.transforms import alexander, f_ode_residual, libera

logger = logging.getLogger(__name__)

SEED = 20240601
RESIDUAL_TOL = 1e-11
CLOSED_FORM_TOL = 1e-12

LOMMEL_CONVEX_POINTS = ((8.0, 3.0), (10.0, 3.0), (12.0, 5.0))
TRANSFORM_POINTS = ((8.0, 3.0), (8.0, 2.0))
# Q = 0 would force mu - p = -1, so these sit beside that line
T5_POINTS = (
    (0.2, 1.1),
    (0.2, 1.3),
    (1.0, 1.9),
    (2.0, 3.1),
    (0.5, 1.55),
    (0.3 + 0.2j, 1.2 + 0.2j),
)
ADMISSIBILITY_CASES: tuple[tuple[ProofId, object], ...] = (
    (ProofId.P1, BesselParams.from_kappa(2.0, 1.0)),
    (ProofId.P2, BesselParams(p=1, b=1, c=1)),
    (ProofId.P3, LommelParams(mu=8, p=3)),
    (ProofId.P4, LommelParams(mu=8, p=3)),
    (ProofId.P5, LommelParams(mu=0.2, p=1.1)),
)


class SuiteContext:
    """Shared state for one suite run: resolution, random draws and cached verdicts."""

    def __init__(self, quick: bool = False, seed: int = SEED) -> None:
        self.quick = quick
        self.seed = seed
        self.plan = DiskSamplingPlan(points_per_circle=180) if quick else DiskSamplingPlan()
        self.convexity_verdicts: Optional[list[SubordinationVerdict]] = None

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def admissibility_grid(self) -> dict[str, float]:
        if self.quick:
            return {"theta_count": 40, "m_count": 12, "z_samples": 4, "m_max": DEFAULT_M_MAX}
        return {
            "theta_count": DEFAULT_THETA_GRID,
            "m_count": DEFAULT_M_GRID,
            "z_samples": DEFAULT_Z_SAMPLES,
            "m_max": DEFAULT_M_MAX,
        }

    def region_step(self) -> float:
        return 0.25 if self.quick else 0.05


def _disk_points(rng: np.random.Generator, count: int, radius: float = 0.999) -> np.ndarray:
    modulus = radius * np.sqrt(rng.uniform(0, 1, count))
    return modulus * np.exp(2j * np.pi * rng.uniform(0, 1, count))


def _bessel_draws(rng: np.random.Generator, count: int) -> list[BesselParams]:
    kappas = rng.uniform(0.5, 6.0, count)
    cs = rng.uniform(-4.0, 4.0, count)
    return [BesselParams.from_kappa(k, c) for k, c in zip(kappas, cs)]


def _lommel_draws(rng: np.random.Generator, count: int) -> list[LommelParams]:
    draws: list[LommelParams] = []
    while len(draws) < count:
        mu, p = rng.uniform(0.0, 16.0), rng.uniform(0.0, 8.0)
        if min(
            distance_to_negative_odd_integer(complex(mu + p)),
            distance_to_negative_odd_integer(complex(mu - p)),
        ) < 1e-3:
            continue
        draws.append(LommelParams(mu=mu, p=p))
    return draws


def _draws_with_positive_slack(
    rng: np.random.Generator,
    theorem_id: TheoremId,
    kappa_range: tuple[float, float],
    c_range: tuple[float, float],
    count: int = 10,
) -> list[BesselParams]:
    draws: list[BesselParams] = []
    while len(draws) < count:
        params = BesselParams.from_kappa(rng.uniform(*kappa_range), rng.uniform(*c_range))
        if condition_slack(theorem_id, params) > 0:
            draws.append(params)
    return draws


# ---------------------------------------------------------------------------
# Items; each returns (passed, detail)
# ---------------------------------------------------------------------------


def item_recurrence(ctx: SuiteContext) -> tuple[bool, str]:
    rng = ctx.rng()
    params_list = _bessel_draws(rng, 100)
    points = _disk_points(rng, 100)
    worst = max(recurrence_residual(p, z) for p, z in zip(params_list, points))
    return worst <= RESIDUAL_TOL, f"max residual {worst:.3e}"


def item_ode_residuals(ctx: SuiteContext) -> tuple[bool, str]:
    rng = ctx.rng()
    bessel = _bessel_draws(rng, 100)
    lommel = _lommel_draws(rng, 100)
    points = _disk_points(rng, 200)
    worst_u = max(ode_residual_u(p, z) for p, z in zip(bessel, points[:100]))
    worst_h = max(ode_residual_h(p, z) for p, z in zip(lommel, points[100:]))
    passed = worst_u <= RESIDUAL_TOL and worst_h <= RESIDUAL_TOL
    return passed, f"max u residual {worst_u:.3e}, max h residual {worst_h:.3e}"


def item_closed_forms(ctx: SuiteContext) -> tuple[bool, str]:
    points = _disk_points(ctx.rng(), 200)
    pairs = (
        (BesselParams(p=0.5, b=1, c=1), ClosedForm.SINC_SQRT),
        (BesselParams(p=0.5, b=1, c=-1), ClosedForm.SINHC_SQRT),
        (BesselParams(p=1.5, b=1, c=1), ClosedForm.J32_COMBO),
    )
    deviations = []
    for params, kind in pairs:
        values = series_eval_many(bessel_u_coeffs(params), points)
        closed = np.array([closed_form(kind, z) for z in points])
        # the j32 identity is stated for z u_{3/2}
        scale = np.abs(points) if kind is ClosedForm.J32_COMBO else 1.0
        deviations.append(float(np.max(np.abs(values - closed) * scale)))
    worst = max(deviations)
    return worst <= CLOSED_FORM_TOL, "max deviations " + ", ".join(f"{d:.2e}" for d in deviations)


def item_exact_constant(ctx: SuiteContext) -> tuple[bool, str]:
    defect = lemniscate_constant_defect()
    return abs(defect) <= 1e-15, f"defect {defect:.3e}"


def _convexity_cases(ctx: SuiteContext) -> tuple[list[SubordinationVerdict], list[str]]:
    """Verdicts for item 5, cached for the strong-convexity item."""
    notes: list[str] = []
    if ctx.convexity_verdicts is not None:
        return ctx.convexity_verdicts, notes

    verdicts = [
        subordination_check(FunctionalKind.CONVEXITY, bessel_u_coeffs(BesselParams(p=0.5, b=1, c=c)), None, ctx.plan)
        for c in (1, -1)
    ]
    for params in _draws_with_positive_slack(ctx.rng(), TheoremId.T2_U_CONVEX, (1.25, 2.75), (0.05, 2.0)):
        verdicts.append(verify_theorem(TheoremId.T2_U_CONVEX, params, ctx.plan).verdict)
    for mu, p in LOMMEL_CONVEX_POINTS:
        params = LommelParams(mu=mu, p=p)
        slack = condition_slack(TheoremId.T3_H_CONVEX, params)
        if slack <= 0:
            notes.append(f"h({mu:g},{p:g}) skipped: condition slack {slack:.3f}")
            continue
        verdicts.append(verify_theorem(TheoremId.T3_H_CONVEX, params, ctx.plan).verdict)
    ctx.convexity_verdicts = verdicts
    return verdicts, notes


def item_convexity(ctx: SuiteContext) -> tuple[bool, str]:
    verdicts, notes = _convexity_cases(ctx)
    failing = [v for v in verdicts if not v.holds]
    worst = min((v.min_margin for v in verdicts if v.min_margin is not None), default=math.nan)
    detail = f"{len(verdicts) - len(failing)}/{len(verdicts)} hold, min margin {worst:.4g}"
    if notes:
        detail += "; " + "; ".join(notes)
    return not failing, detail


def starlike_sin_combo(N: int = 64) -> PowerSeries:
    """(sin sqrt z - sqrt z cos sqrt z)/sqrt z = sum_{n>=1} (-1)^{n+1} 2n/(2n+1)! z^n."""
    coeffs = [0.0] + [(-1) ** (n + 1) * 2 * n / math.factorial(2 * n + 1) for n in range(1, N + 1)]
    return PowerSeries(coeffs=coeffs)


def item_starlikeness(ctx: SuiteContext) -> tuple[bool, str]:
    draws = _draws_with_positive_slack(ctx.rng(), TheoremId.C1_ZU_STARLIKE, (2.25, 3.75), (0.05, 2.0))
    verdicts = [verify_theorem(TheoremId.C1_ZU_STARLIKE, p, ctx.plan).verdict for p in draws]

    combo = starlike_sin_combo()
    shifted = multiply_by_z(bessel_u_coeffs(BesselParams(p=1.5, b=1, c=1)))
    reference = shifted.coeffs[: combo.coeffs.size] / 3
    mismatch = float(np.max(np.abs(combo.coeffs - reference)))
    verdicts.append(subordination_check(FunctionalKind.STARLIKENESS, combo, None, ctx.plan))

    holding = sum(v.holds for v in verdicts)
    passed = holding == len(verdicts) and mismatch <= 1e-15
    return passed, f"{holding}/{len(verdicts)} hold, combo coefficient mismatch {mismatch:.1e}"


def item_caratheodory(ctx: SuiteContext) -> tuple[bool, str]:
    draws = _draws_with_positive_slack(ctx.rng(), TheoremId.T1_U_PRIME, (0.5, 5.0), (0.05, 4.0))
    reports = [verify_theorem(TheoremId.T1_U_PRIME, p, ctx.plan) for p in draws]
    for mu, p in T5_POINTS:
        params = LommelParams(mu=mu, p=p)
        if condition_slack(TheoremId.T5_F_PRIME, params) <= 0:
            return False, f"T5 point ({mu}, {p}) does not satisfy its condition"
        reports.append(verify_theorem(TheoremId.T5_F_PRIME, params, ctx.plan))
    holding = sum(r.verdict.holds for r in reports)
    return holding == len(reports), f"{holding}/{len(reports)} hold"


def item_transforms(ctx: SuiteContext) -> tuple[bool, str]:
    rng = ctx.rng()
    problems: list[str] = []
    worst_residual = 0.0
    for mu, p in TRANSFORM_POINTS:
        params = LommelParams(mu=mu, p=p)
        if condition_slack(TheoremId.T3_H_CONVEX, params) <= 0:
            problems.append(f"({mu:g},{p:g}) outside the condition")
            continue
        h = lommel_h_coeffs(params)
        for name, image in (("alexander", alexander(h)), ("libera", libera(h))):
            verdict = subordination_check(FunctionalKind.CONVEXITY, image, None, ctx.plan)
            if not verdict.holds:
                problems.append(f"{name}(h({mu:g},{p:g})) margin {verdict.min_margin}")
        residual = max(f_ode_residual(params, z) for z in _disk_points(rng, 50))
        worst_residual = max(worst_residual, residual)
    if worst_residual > RESIDUAL_TOL:
        problems.append(f"f ODE residual {worst_residual:.3e}")
    detail = "; ".join(problems) or f"all hold, max f ODE residual {worst_residual:.3e}"
    return not problems, detail


def item_admissibility(ctx: SuiteContext) -> tuple[bool, str]:
    grid = ctx.admissibility_grid()
    problems: list[str] = []
    summary: list[str] = []
    for proof_id, params in ADMISSIBILITY_CASES:
        report = admissibility_scan(proof_id, params, **grid)  # type: ignore[arg-type]
        summary.append(f"{proof_id.value} {report.min_abs_psi:.4f}>={report.paper_bound:.4f}")
        if not report.ok:
            problems.append(f"{proof_id.value} min |psi| {report.min_abs_psi:.6g} vs bound {report.paper_bound:.6g}")
        if not intermediate_bounds_hold(report):
            problems.append(f"{proof_id.value} intermediate bounds violated")
    return not problems, "; ".join(problems or summary)


def item_region_scan(ctx: SuiteContext) -> tuple[bool, str]:
    step = ctx.region_step()
    report = region_scan(
        ScanFamily.BESSEL,
        Axis(name="kappa", min=0.0, max=5.0, step=step),
        Axis(name="c", min=step, max=3.0, step=step),
        theorems=[TheoremId.T1_U_PRIME, TheoremId.T2_U_CONVEX, TheoremId.C1_ZU_STARLIKE],
        plan=ctx.plan,
    )
    bad = counterexample_cells(report)
    gap = sufficiency_gap_cells(report, TheoremId.T2_U_CONVEX)
    detail = f"{len(report.cells)} rows, {len(bad)} counterexamples, {len(gap)} T2 gap cells"
    return not bad and bool(gap), detail


def item_hprime_bound(ctx: SuiteContext) -> tuple[bool, str]:
    params = LommelParams(mu=8, p=3)
    bound = hprime_lower_bound(params)
    _, dh = derivatives(lommel_h_coeffs(params), 1)
    smallest = float(np.min(np.abs(series_eval_many(dh, ctx.plan.sample_points()))))
    return smallest >= bound - 1e-6, f"min |h'| {smallest:.6f} vs bound {bound:.6f}"


def item_strong_convexity(ctx: SuiteContext) -> tuple[bool, str]:
    verdicts, _ = _convexity_cases(ctx)
    holding = [v for v in verdicts if v.holds]
    strong = [v for v in holding if strongly_convex_of_order_half(v)]
    worst = max((v.max_abs_arg or 0.0 for v in holding), default=0.0)
    return len(strong) == len(holding), f"max |arg P| {worst:.4f} < pi/4 = {math.pi / 4:.4f}"


ITEMS: tuple[tuple[str, Callable[[SuiteContext], tuple[bool, str]]], ...] = (
    ("recurrence_residual", item_recurrence),
    ("ode_residuals", item_ode_residuals),
    ("closed_forms", item_closed_forms),
    ("exact_constant", item_exact_constant),
    ("lemniscate_convexity", item_convexity),
    ("lemniscate_starlikeness", item_starlikeness),
    ("caratheodory_verdicts", item_caratheodory),
    ("transforms", item_transforms),
    ("admissibility", item_admissibility),
    ("region_scan_soundness", item_region_scan),
    ("hprime_lower_bound", item_hprime_bound),
    ("strong_convexity", item_strong_convexity),
)


def item_names() -> list[str]:
    return [name for name, _ in ITEMS]


def _run_items(ctx: SuiteContext, names: Optional[list[str]]) -> Iterator[SuiteItemResult]:
    selected = set(names) if names else None
    for name, func in ITEMS:
        if selected is not None and name not in selected:
            continue
        started = time.perf_counter()
        try:
            passed, detail = func(ctx)
        except Exception as exc:  # an item that raises has failed
            logger.exception("suite item %s raised", name)
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - started
        logger.info("%s %s in %.2fs: %s", name, "passed" if passed else "FAILED", elapsed, detail)
        yield SuiteItemResult(name=name, passed=passed, detail=detail, seconds=elapsed)


def run_suite(quick: bool = False, names: Optional[list[str]] = None) -> SuiteSummary:
    unknown = sorted(set(names or ()) - set(item_names()))
    if unknown:
        raise ValueError(f"unknown suite items: {unknown}")
    ctx = SuiteContext(quick=quick)
    return SuiteSummary(quick=quick, items=list(_run_items(ctx, names)))
