"""Parameter-region scans comparing each theorem's sufficient condition with the
numerically certified verdict, cell by cell."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from pydantic import ValidationError

from app.config import (
    BESSEL_C_RANGE,
    BESSEL_KAPPA_RANGE,
    DEFAULT_SCAN_STEP,
    LOMMEL_MU_RANGE,
    LOMMEL_P_RANGE,
    max_workers,
)
from app.errors import LemniscateError, PreconditionError
from app.lemniscate import DEFAULT_PLAN
from app.models import (
    BESSEL_THEOREMS,
    LOMMEL_THEOREMS,
    Axis,
    BesselParams,
    DiskSamplingPlan,
    LommelParams,
    Params,
    RegionScanReport,
    ScanCell,
    ScanFamily,
    TheoremId,
)
from app.theorems import condition_slack, verify_theorem

logger = logging.getLogger(__name__)

NAN = float("nan")


def default_axes(family: ScanFamily, step: float = DEFAULT_SCAN_STEP) -> tuple[Axis, Axis]:
    if family is ScanFamily.BESSEL:
        # c starts one step in: the range is open at 0
        return (
            Axis(name="kappa", min=BESSEL_KAPPA_RANGE[0], max=BESSEL_KAPPA_RANGE[1], step=step),
            Axis(name="c", min=BESSEL_C_RANGE[0] + step, max=BESSEL_C_RANGE[1], step=step),
        )
    return (
        Axis(name="mu", min=LOMMEL_MU_RANGE[0], max=LOMMEL_MU_RANGE[1], step=step),
        Axis(name="p", min=LOMMEL_P_RANGE[0], max=LOMMEL_P_RANGE[1], step=step),
    )


def _check_within(axis: Axis, lower: float, upper: float, open_lower: bool = False) -> None:
    below = axis.min <= lower if open_lower else axis.min < lower
    if below or axis.max > upper:
        bracket = "(" if open_lower else "["
        raise PreconditionError(
            f"axis {axis.name} = [{axis.min:g}, {axis.max:g}] must lie within "
            f"{bracket}{lower:g}, {upper:g}]"
        )


def validate_axes(family: ScanFamily, axis1: Axis, axis2: Axis) -> None:
    if family is ScanFamily.BESSEL:
        _check_within(axis1, *BESSEL_KAPPA_RANGE)
        _check_within(axis2, *BESSEL_C_RANGE, open_lower=True)
    else:
        _check_within(axis1, *LOMMEL_MU_RANGE)
        _check_within(axis2, *LOMMEL_P_RANGE)


def cell_params(family: ScanFamily, value1: float, value2: float) -> Params:
    """Bessel cells are (kappa, c) with b = 1, so p = kappa - 1; Lommel cells are (mu, p)."""
    if family is ScanFamily.BESSEL:
        return BesselParams.from_kappa(value1, value2, b=1)
    return LommelParams(mu=value1, p=value2)


def evaluate_cell(
    family: ScanFamily,
    value1: float,
    value2: float,
    theorems: Sequence[TheoremId],
    plan: DiskSamplingPlan,
) -> list[ScanCell]:
    """One row per theorem; invalid parameters yield nan fields and consistent = true."""
    try:
        params = cell_params(family, value1, value2)
    except ValidationError as exc:
        logger.warning(
            "invalid %s cell (%g, %g): %s", family.value, value1, value2, exc.errors()[0]["msg"]
        )
        return [
            ScanCell(
                theorem=theorem,
                param1=value1,
                param2=value2,
                condition_slack=NAN,
                verdict_margin=NAN,
                consistent=True,
            )
            for theorem in theorems
        ]

    rows = []
    for theorem in theorems:
        try:
            report = verify_theorem(theorem, params, plan)
        except LemniscateError as exc:
            logger.warning(
                "%s cell (%g, %g) not evaluated: %s", theorem.value, value1, value2, exc
            )
            rows.append(
                ScanCell(
                    theorem=theorem,
                    param1=value1,
                    param2=value2,
                    condition_slack=_safe_slack(theorem, params),
                    verdict_margin=NAN,
                    consistent=True,
                )
            )
            continue
        margin = report.verdict.min_margin
        rows.append(
            ScanCell(
                theorem=theorem,
                param1=value1,
                param2=value2,
                condition_slack=report.condition_slack,
                verdict_margin=NAN if report.verdict.inconclusive or margin is None else margin,
                consistent=report.consistent,
            )
        )
    return rows


def _safe_slack(theorem: TheoremId, params: Params) -> float:
    try:
        return condition_slack(theorem, params)
    except LemniscateError:
        return NAN


def _evaluate_task(task: tuple) -> list[ScanCell]:
    return evaluate_cell(*task)


def resolve_workers(requested: Optional[int]) -> int:
    """Requested worker count, capped by LEMNI_MAX_WORKERS."""
    cap = max_workers()
    if requested is None:
        return cap
    if requested < 1:
        raise PreconditionError(f"workers must be a positive integer, got {requested}")
    return min(requested, cap)


def region_scan(
    family: ScanFamily,
    axis1: Optional[Axis] = None,
    axis2: Optional[Axis] = None,
    theorems: Optional[Sequence[TheoremId]] = None,
    plan: DiskSamplingPlan = DEFAULT_PLAN,
    workers: Optional[int] = None,
) -> RegionScanReport:
    """Scan every (axis1, axis2) cell; rows come back theorem-major, then axis1-major."""
    default1, default2 = default_axes(family)
    axis1 = axis1 or default1
    axis2 = axis2 or default2
    validate_axes(family, axis1, axis2)

    allowed = BESSEL_THEOREMS if family is ScanFamily.BESSEL else LOMMEL_THEOREMS
    theorems = list(theorems or allowed)
    stray = [t.value for t in theorems if t not in allowed]
    if stray:
        raise PreconditionError(f"theorems {stray} do not apply to the {family.value} family")

    tasks = [
        (family, v1, v2, tuple(theorems), plan)
        for v1 in axis1.values()
        for v2 in axis2.values()
    ]
    n_workers = resolve_workers(workers)
    logger.info(
        "%s scan: %d cells x %d theorems on %d worker(s)",
        family.value,
        len(tasks),
        len(theorems),
        n_workers,
    )

    if n_workers == 1:
        per_cell = [_evaluate_task(task) for task in tasks]
    else:
        chunk = max(1, math.ceil(len(tasks) / (4 * n_workers)))
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            per_cell = list(pool.map(_evaluate_task, tasks, chunksize=chunk))

    cells = [rows[index] for index in range(len(theorems)) for rows in per_cell]
    counterexamples = sum(1 for cell in cells if not cell.consistent)
    if counterexamples:
        logger.error("%s scan found %d inconsistent cells", family.value, counterexamples)

    return RegionScanReport(
        family=family,
        axis1=axis1,
        axis2=axis2,
        theorems=theorems,
        cells=cells,
    )


def sufficiency_gap_cells(report: RegionScanReport, theorem: TheoremId) -> list[ScanCell]:
    """Cells where the condition fails yet the property is certified."""
    return [
        cell
        for cell in report.cells
        if cell.theorem is theorem and cell.condition_slack < 0 and cell.verdict_margin > 0
    ]


def counterexample_cells(report: RegionScanReport) -> list[ScanCell]:
    """Cells with a positive slack and a conclusive margin <= 0."""
    return [
        cell
        for cell in report.cells
        if cell.condition_slack > 0 and not math.isnan(cell.verdict_margin) and cell.verdict_margin <= 0
    ]
