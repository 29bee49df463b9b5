"""Command-line entry point: eval | verify | scan | admissibility | paper-suite.

Payloads (values, JSON reports, CSV grids) go to stdout or --output; logs go to
stderr. Exit codes: 0 ok, 1 inconsistent report or failing item, 2 invalid
parameters or arguments, 3 inconclusive verdict or a numerical failure
(uncertified series tail, vanishing denominator).
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, Optional, Sequence

from pydantic import ValidationError

from app.admissibility import admissibility_scan, intermediate_bounds_hold
from app.config import (
    DEFAULT_M_GRID,
    DEFAULT_M_MAX,
    DEFAULT_POINTS_PER_CIRCLE,
    DEFAULT_R_MAX,
    DEFAULT_RADII,
    DEFAULT_SCAN_STEP,
    DEFAULT_THETA_GRID,
    DEFAULT_Z_SAMPLES,
    LOG_LEVEL,
)
from app.errors import (
    ConditionNotSatisfiedError,
    FamilyMismatchError,
    NearZeroDenominatorError,
    ToleranceNotMetError,
)
from app.models import (
    BESSEL_THEOREMS,
    Axis,
    BesselParams,
    DiskSamplingPlan,
    LommelParams,
    Params,
    ProofId,
    ScanFamily,
    TheoremId,
)
from app.paper_suite import item_names, run_suite
from app.scan import default_axes, region_scan
from app.series import series_eval
from app.special import (
    ClosedForm,
    bessel_I_normalized,
    bessel_J_normalized,
    bessel_u_coeffs,
    closed_form,
    lommel_h_coeffs,
)
from app.storage import render_csv, render_json, write_output
from app.theorems import verify_theorem
from app.transforms import alexander

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3


class CliError(Exception):
    """Argument-level failure reported with exit code 2."""


def format_value(value: complex) -> str:
    """15 significant digits; real values print without an imaginary part."""
    value = complex(value)
    if value.imag == 0:
        return format(value.real + 0.0, ".15g")
    return f"{value.real:.15g}{value.imag:+.15g}j"


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------


def _bessel_params(args: argparse.Namespace) -> BesselParams:
    if args.p is None:
        raise CliError("--p is required for Bessel functions and theorems")
    return BesselParams(p=args.p, b=args.b, c=args.c)


def _lommel_params(args: argparse.Namespace) -> LommelParams:
    if args.mu is None or args.pp is None:
        raise CliError("--mu and --pp are required for Lommel functions and theorems")
    return LommelParams(mu=args.mu, p=args.pp)


def _plan(args: argparse.Namespace) -> DiskSamplingPlan:
    radii = tuple(args.radii) if args.radii else DEFAULT_RADII
    return DiskSamplingPlan(radii=radii, r_max=args.r_max, points_per_circle=args.points)


def parse_axis(name: str, spec: str) -> Axis:
    """MIN:MAX:STEP."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise CliError(f"axis {name} must be MIN:MAX:STEP, got {spec!r}")
    try:
        low, high, step = (float(part) for part in parts)
    except ValueError:
        raise CliError(f"axis {name} must be numeric MIN:MAX:STEP, got {spec!r}") from None
    return Axis(name=name, min=low, max=high, step=step)


def parse_theorem(value: str) -> TheoremId:
    """Full ids (T2_u_convex) or their short prefix (T2)."""
    for theorem in TheoremId:
        if value == theorem.value or value.upper() == theorem.value.split("_")[0]:
            return theorem
    raise argparse.ArgumentTypeError(
        f"unknown theorem {value!r}; choose from {[t.value for t in TheoremId]}"
    )


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        target = write_output(output, text)
        print(f"wrote {target}", file=sys.stderr)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

CLOSED_FORM_NAMES = {"sinc": "sinc_sqrt", "sinhc": "sinhc_sqrt", "j32": "j32_combo"}


def _eval_function(args: argparse.Namespace) -> complex:
    z = args.z
    name = args.function
    if name == "u":
        return series_eval(bessel_u_coeffs(_bessel_params(args)), z)
    if name == "h":
        return series_eval(lommel_h_coeffs(_lommel_params(args)), z)
    if name == "alexander_h":
        return series_eval(alexander(lommel_h_coeffs(_lommel_params(args))), z)
    if name in ("J", "I"):
        if args.p is None:
            raise CliError(f"--p is required for {name}")
        func = bessel_J_normalized if name == "J" else bessel_I_normalized
        return func(args.p, z)
    return closed_form(ClosedForm(CLOSED_FORM_NAMES[name]), z)


def cmd_eval(args: argparse.Namespace) -> int:
    print(format_value(_eval_function(args)))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    theorem = args.theorem
    params: Params = (
        _bessel_params(args) if theorem in BESSEL_THEOREMS else _lommel_params(args)
    )
    report = verify_theorem(theorem, params, _plan(args))
    _emit(render_json(report), args.output)
    if not report.consistent:
        return EXIT_FAILED
    if report.verdict.inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_scan(args: argparse.Namespace) -> int:
    family = ScanFamily(args.family)
    axis1, axis2 = default_axes(family, args.step)
    if args.axis1:
        axis1 = parse_axis(axis1.name, args.axis1)
    if args.axis2:
        axis2 = parse_axis(axis2.name, args.axis2)
    report = region_scan(
        family,
        axis1,
        axis2,
        theorems=args.theorems,
        plan=_plan(args),
        workers=args.workers,
    )
    _emit(render_csv(report), args.output)
    return EXIT_OK if all(cell.consistent for cell in report.cells) else EXIT_FAILED


def cmd_admissibility(args: argparse.Namespace) -> int:
    proof = ProofId(args.proof)
    params: Params = (
        _bessel_params(args) if proof in (ProofId.P1, ProofId.P2) else _lommel_params(args)
    )
    report = admissibility_scan(
        proof,
        params,
        theta_count=args.theta_grid,
        m_max=args.m_max,
        z_samples=args.z_samples,
        m_count=args.m_grid,
    )
    _emit(render_json(report), args.output)
    return EXIT_OK if report.ok and intermediate_bounds_hold(report) else EXIT_FAILED


def cmd_paper_suite(args: argparse.Namespace) -> int:
    if args.list:
        for name in item_names():
            print(name)
        return EXIT_OK
    summary = run_suite(quick=args.quick, names=args.items)
    _emit(render_json(summary), args.output)
    failure = summary.first_failure
    if failure is not None:
        print(f"paper-suite failed at item {failure.name}: {failure.detail}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_bessel_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("Bessel parameters")
    group.add_argument("--p", type=complex, help="order p")
    group.add_argument("--b", type=complex, default=1, help="b (default 1)")
    group.add_argument("--c", type=complex, default=1, help="c (default 1)")


def _add_lommel_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("Lommel parameters")
    group.add_argument("--mu", type=complex, help="mu")
    group.add_argument("--pp", type=complex, help="Lommel order p")


def _add_plan_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("disk sampling plan")
    group.add_argument("--radii", type=float, nargs="+", help="ascending circle radii")
    group.add_argument("--r-max", type=float, default=DEFAULT_R_MAX)
    group.add_argument("--points", type=int, default=DEFAULT_POINTS_PER_CIRCLE, help="points per circle")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lemni",
        description="Lemniscate subordination checks for normalized Bessel and Lommel functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a function at one point")
    p_eval.add_argument(
        "function", choices=["u", "h", "J", "I", "sinc", "sinhc", "j32", "alexander_h"]
    )
    p_eval.add_argument("--z", type=complex, required=True, help="point, e.g. 0.25 or 0.3-0.4j")
    _add_bessel_args(p_eval)
    _add_lommel_args(p_eval)
    p_eval.set_defaults(handler=cmd_eval)

    p_verify = sub.add_parser("verify", help="pair a theorem's condition with its verdict")
    p_verify.add_argument("theorem", type=parse_theorem)
    _add_bessel_args(p_verify)
    _add_lommel_args(p_verify)
    _add_plan_args(p_verify)
    p_verify.add_argument("--output", help="write the JSON report here")
    p_verify.set_defaults(handler=cmd_verify)

    p_scan = sub.add_parser("scan", help="parameter-region scan as CSV")
    p_scan.add_argument("family", choices=[f.value for f in ScanFamily])
    p_scan.add_argument("--axis1", help="kappa (bessel) or mu (lommel) as MIN:MAX:STEP")
    p_scan.add_argument("--axis2", help="c (bessel) or p (lommel) as MIN:MAX:STEP")
    p_scan.add_argument("--step", type=float, default=DEFAULT_SCAN_STEP, help="step for default axes")
    p_scan.add_argument("--theorems", type=parse_theorem, nargs="+")
    p_scan.add_argument("--workers", type=int, help="worker processes (capped by LEMNI_MAX_WORKERS)")
    p_scan.add_argument("--output", help="write the CSV here")
    _add_plan_args(p_scan)
    p_scan.set_defaults(handler=cmd_scan)

    p_adm = sub.add_parser("admissibility", help="scan |psi| over admissible triples")
    p_adm.add_argument("--proof", required=True, choices=[p.value for p in ProofId])
    p_adm.add_argument("--theta-grid", type=int, default=DEFAULT_THETA_GRID)
    p_adm.add_argument("--m-grid", type=int, default=DEFAULT_M_GRID)
    p_adm.add_argument("--m-max", type=float, default=DEFAULT_M_MAX)
    p_adm.add_argument("--z-samples", type=int, default=DEFAULT_Z_SAMPLES)
    p_adm.add_argument("--output", help="write the JSON report here")
    _add_bessel_args(p_adm)
    _add_lommel_args(p_adm)
    p_adm.set_defaults(handler=cmd_admissibility)

    p_suite = sub.add_parser("paper-suite", help="run every reproduction item")
    p_suite.add_argument("--list", action="store_true", help="print item names and exit")
    p_suite.add_argument("--quick", action="store_true", help="reduced grids, same code paths")
    p_suite.add_argument("--items", nargs="+", choices=item_names(), help="run only these items")
    p_suite.add_argument("--output", help="write the JSON summary here")
    p_suite.set_defaults(handler=cmd_paper_suite)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; keep --help at 0
        return int(exc.code or 0)

    logging.basicConfig(
        level=LOG_LEVEL,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (CliError, ValidationError, ValueError, FamilyMismatchError, ConditionNotSatisfiedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ToleranceNotMetError, NearZeroDenominatorError) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except Exception:
        logger.exception("%s failed", args.command)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
