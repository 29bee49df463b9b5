"""Tests for parameter records, series containers and report models."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from app.models import (
    AdmissibilityReport,
    AdmissibleTriple,
    Axis,
    BesselFamily,
    BesselParams,
    DiskSamplingPlan,
    FunctionalKind,
    LommelParams,
    PowerSeries,
    ProofId,
    RegionScanReport,
    ScanCell,
    ScanFamily,
    SubordinationVerdict,
    SuiteItemResult,
    SuiteSummary,
    TheoremId,
    TheoremReport,
)


# ---------------------------------------------------------------------------
# PowerSeries
# ---------------------------------------------------------------------------


class TestPowerSeries:
    def test_truncation_order_follows_length(self):
        s = PowerSeries(coeffs=[1, 2, 3])
        assert s.truncation_order == 2
        assert s.coeffs.dtype == complex

    def test_coefficient_beyond_order_is_zero(self):
        s = PowerSeries(coeffs=[1, 2, 3])
        assert s.coefficient(1) == 2
        assert s.coefficient(10) == 0
        assert s.coefficient(-1) == 0

    def test_coeffs_are_read_only(self):
        s = PowerSeries(coeffs=[1, 2, 3])
        with pytest.raises(ValueError):
            s.coeffs[0] = 5

    @pytest.mark.parametrize("bad", [[], [[1, 2], [3, 4]], [1, float("nan")], [1, float("inf")]])
    def test_rejects_empty_nested_or_non_finite(self, bad):
        with pytest.raises(ValidationError):
            PowerSeries(coeffs=bad)

    def test_negative_tail_hint_rejected(self):
        with pytest.raises(ValidationError):
            PowerSeries(coeffs=[1], tail_bound_hint=-1.0)


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


class TestBesselParams:
    def test_kappa_is_derived(self):
        params = BesselParams(p=1, b=1, c=1)
        assert params.kappa == 2

    def test_spherical_family(self):
        params = BesselParams.for_family(BesselFamily.SPHERICAL, 0.5)
        assert (params.b, params.c) == (2, 1)
        assert params.kappa == 2

    def test_modified_family_flips_c(self):
        assert BesselParams.for_family(BesselFamily.MODIFIED, 1).c == -1

    def test_from_kappa_inverts_kappa(self):
        params = BesselParams.from_kappa(2.5, 0.75)
        assert params.p == pytest.approx(1.5)
        assert params.kappa == pytest.approx(2.5)
        assert params.c == 0.75

    @pytest.mark.parametrize("p", [-1, -2, -3.0])
    def test_kappa_at_nonpositive_integer_rejected(self, p):
        with pytest.raises(ValidationError, match="kappa"):
            BesselParams(p=p, b=1, c=1)

    def test_complex_kappa_near_pole_allowed(self):
        params = BesselParams(p=-1 + 0.1j, b=1, c=1)
        assert params.kappa == 0.1j

    def test_c_zero_is_a_valid_record(self):
        assert BesselParams(p=1, b=1, c=0).c == 0

    def test_shifted(self):
        params = BesselParams(p=1, b=2, c=-1).shifted(1)
        assert (params.p, params.b, params.c) == (2, 2, -1)

    def test_frozen(self):
        params = BesselParams(p=1)
        with pytest.raises(ValidationError):
            params.p = 2


class TestLommelParams:
    def test_derived_quantities(self, lommel_8_3):
        assert lommel_8_3.K == 4
        assert lommel_8_3.F == 7
        assert lommel_8_3.M == 160
        assert lommel_8_3.N == 112
        assert lommel_8_3.is_real

    @pytest.mark.parametrize("mu,p", [(0, 1), (2, 3), (1, -2), (-5, 0)])
    def test_negative_odd_sum_or_difference_rejected(self, mu, p):
        with pytest.raises(ValidationError, match="negative odd integer"):
            LommelParams(mu=mu, p=p)

    def test_even_difference_allowed(self):
        assert LommelParams(mu=0, p=2).K == 0.5

    def test_complex_is_not_real(self):
        assert not LommelParams(mu=0.3 + 0.2j, p=1.3).is_real


# ---------------------------------------------------------------------------
# Geometry and verdicts
# ---------------------------------------------------------------------------


class TestDiskSamplingPlan:
    def test_sample_points_circle_major(self):
        plan = DiskSamplingPlan(radii=(0.5, 0.9), r_max=0.9, points_per_circle=64)
        points = plan.sample_points()
        assert points.shape == (128,)
        assert points[0] == 0.5
        assert points[64] == 0.9
        np.testing.assert_allclose(np.abs(points[:64]), 0.5)

    def test_radii_must_ascend(self):
        with pytest.raises(ValidationError, match="ascending"):
            DiskSamplingPlan(radii=(0.9, 0.5))

    def test_radius_beyond_r_max_rejected(self):
        with pytest.raises(ValidationError, match="r_max"):
            DiskSamplingPlan(radii=(0.5, 0.95), r_max=0.9)

    def test_r_max_below_one(self):
        with pytest.raises(ValidationError):
            DiskSamplingPlan(radii=(0.5,), r_max=1.0)

    def test_minimum_resolution(self):
        with pytest.raises(ValidationError):
            DiskSamplingPlan(points_per_circle=63)


class TestSubordinationVerdict:
    def test_holds_must_match_margin(self):
        with pytest.raises(ValidationError, match="holds"):
            SubordinationVerdict(
                holds=True, functional_kind=FunctionalKind.CONVEXITY, min_margin=-0.1
            )

    def test_inconclusive_never_holds(self):
        verdict = SubordinationVerdict(
            holds=False, functional_kind=FunctionalKind.CONVEXITY, inconclusive=True
        )
        assert verdict.min_margin is None
        with pytest.raises(ValidationError):
            SubordinationVerdict(
                holds=True,
                functional_kind=FunctionalKind.CONVEXITY,
                min_margin=0.5,
                inconclusive=True,
            )

    def test_margin_at_threshold_does_not_hold(self):
        verdict = SubordinationVerdict(
            holds=False, functional_kind=FunctionalKind.STARLIKENESS, min_margin=1e-6
        )
        assert not verdict.holds


def _verdict(holds: bool, inconclusive: bool = False) -> SubordinationVerdict:
    if inconclusive:
        return SubordinationVerdict(
            holds=False, functional_kind=FunctionalKind.CONVEXITY, inconclusive=True
        )
    return SubordinationVerdict(
        holds=holds,
        functional_kind=FunctionalKind.CONVEXITY,
        min_margin=0.3 if holds else -0.3,
    )


class TestTheoremReport:
    def _report(self, condition_holds, verdict, consistent):
        return TheoremReport(
            theorem_id=TheoremId.T2_U_CONVEX,
            params={"p": 1, "b": 1, "c": 1},
            condition_holds=condition_holds,
            condition_slack=0.5 if condition_holds else -0.5,
            check_kind=FunctionalKind.CONVEXITY,
            verdict=verdict,
            consistent=consistent,
        )

    def test_counterexample_is_inconsistent(self):
        report = self._report(True, _verdict(False), consistent=False)
        assert not report.consistent

    def test_failing_condition_is_always_consistent(self):
        assert self._report(False, _verdict(False), consistent=True).consistent
        assert self._report(False, _verdict(True), consistent=True).consistent

    def test_inconclusive_is_consistent(self):
        assert self._report(True, _verdict(False, inconclusive=True), consistent=True).consistent

    def test_wrong_consistency_flag_rejected(self):
        with pytest.raises(ValidationError, match="consistent"):
            self._report(True, _verdict(False), consistent=True)
        with pytest.raises(ValidationError, match="consistent"):
            self._report(True, _verdict(True), consistent=False)

    def test_schema_version(self):
        assert self._report(True, _verdict(True), consistent=True).schema_version == "1"


# ---------------------------------------------------------------------------
# Admissibility
# ---------------------------------------------------------------------------


class TestAdmissibleTriple:
    def test_r_and_s_at_theta_zero(self):
        triple = AdmissibleTriple.on_boundary(0.0, 1.0)
        assert triple.r == pytest.approx(math.sqrt(2))
        assert triple.s == pytest.approx(1 / (2 * math.sqrt(2)))
        assert (triple.t + triple.s).real == pytest.approx(3 / (8 * math.sqrt(2)))

    def test_r_squared_minus_one_is_unit_rotation(self):
        for theta in (-0.7, -0.2, 0.0, 0.4, 0.78):
            triple = AdmissibleTriple.on_boundary(theta, 2.0)
            assert triple.r**2 - 1 == pytest.approx(complex(math.cos(4 * theta), math.sin(4 * theta)))

    @pytest.mark.parametrize("theta", [math.pi / 4, -math.pi / 4, 1.0])
    def test_theta_outside_open_interval_rejected(self, theta):
        with pytest.raises(ValidationError):
            AdmissibleTriple(theta=theta, m=1.0, t=10.0)

    def test_m_below_one_rejected(self):
        with pytest.raises(ValidationError):
            AdmissibleTriple(theta=0.0, m=0.5, t=10.0)

    def test_t_below_constraint_rejected(self):
        with pytest.raises(ValidationError, match="Re"):
            AdmissibleTriple(theta=0.0, m=1.0, t=-5.0)

    def test_interior_offset_and_imaginary_part_allowed(self):
        triple = AdmissibleTriple.on_boundary(0.3, 1.5, offset=1.0, imag=2.0)
        rotated = (triple.t + triple.s) * complex(math.cos(-0.9), math.sin(-0.9))
        assert rotated.real == pytest.approx(AdmissibleTriple.t_lower_bound(0.3, 1.5) + 1.0)
        assert rotated.imag == pytest.approx(2.0)


def test_admissibility_report_ok_requires_positive_bound_and_m_cap():
    base = dict(
        proof_id=ProofId.P2,
        params={"p": 1},
        min_abs_psi=5.0,
        arg_min=AdmissibleTriple.on_boundary(0.0, 1.0),
        arg_min_z=1,
        min_s_r2_sq=2.0,
        max_r_minus_1_sq=1.0,
        m_max=8.0,
        n_triples=10,
    )
    assert AdmissibilityReport(paper_bound=4.0, m_cap_validated=True, **base).ok
    assert not AdmissibilityReport(paper_bound=6.0, m_cap_validated=True, **base).ok
    assert not AdmissibilityReport(paper_bound=-1.0, m_cap_validated=True, **base).ok
    assert not AdmissibilityReport(paper_bound=4.0, m_cap_validated=False, **base).ok


# ---------------------------------------------------------------------------
# Scans and the suite summary
# ---------------------------------------------------------------------------


class TestAxis:
    def test_count_is_inclusive(self):
        assert Axis(name="c", min=0.0, max=1.0, step=0.05).count == 21

    def test_count_tolerates_rounding(self):
        assert Axis(name="c", min=0.05, max=6.0, step=0.05).count == 120

    def test_values_are_rounded_grid_points(self):
        values = Axis(name="kappa", min=-1.0, max=0.0, step=0.1).values()
        assert values[3] == -0.7
        assert values[-1] == 0.0

    def test_reversed_axis_rejected(self):
        with pytest.raises(ValidationError):
            Axis(name="mu", min=2.0, max=1.0, step=0.5)

    def test_step_positive(self):
        with pytest.raises(ValidationError):
            Axis(name="mu", min=0.0, max=1.0, step=0.0)


def test_region_scan_report_checks_row_count():
    axis = Axis(name="mu", min=0.0, max=1.0, step=1.0)
    cell = ScanCell(
        theorem=TheoremId.T3_H_CONVEX,
        param1=0.0,
        param2=0.0,
        condition_slack=-1.0,
        verdict_margin=0.1,
        consistent=True,
    )
    report = RegionScanReport(
        family=ScanFamily.LOMMEL,
        axis1=axis,
        axis2=axis,
        theorems=[TheoremId.T3_H_CONVEX],
        cells=[cell] * 4,
    )
    assert len(report.cells) == 4
    with pytest.raises(ValidationError, match="expected 4 cells"):
        RegionScanReport(
            family=ScanFamily.LOMMEL,
            axis1=axis,
            axis2=axis,
            theorems=[TheoremId.T3_H_CONVEX],
            cells=[cell] * 3,
        )


def test_suite_summary_first_failure():
    summary = SuiteSummary(
        items=[
            SuiteItemResult(name="a", passed=True),
            SuiteItemResult(name="b", passed=False, detail="boom"),
            SuiteItemResult(name="c", passed=False),
        ]
    )
    assert not summary.passed
    assert summary.first_failure.name == "b"
    assert SuiteSummary(items=[SuiteItemResult(name="a", passed=True)]).first_failure is None
