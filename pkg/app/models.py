from __future__ import annotations

import cmath
import math
from enum import Enum
from typing import Any, Optional, Union

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_validator,
    model_validator,
)

from app.config import (
    ADMISSIBILITY_TOLERANCE,
    DEFAULT_ABS_TOL,
    DEFAULT_MAX_TERMS,
    DEFAULT_POINTS_PER_CIRCLE,
    DEFAULT_R_MAX,
    DEFAULT_RADII,
    MARGIN_THRESHOLD,
    MIN_POINTS_PER_CIRCLE,
    POLE_MARGIN,
    SCHEMA_VERSION,
)


def distance_to_nonpositive_integer(value: complex) -> float:
    nearest = min(0, round(value.real))
    return abs(value - nearest)


def distance_to_negative_odd_integer(value: complex) -> float:
    nearest = 2 * round((value.real + 1) / 2) - 1
    return abs(value - min(nearest, -1))


# ---------------------------------------------------------------------------
# Series
# ---------------------------------------------------------------------------


class TruncationControl(BaseModel):
    model_config = ConfigDict(frozen=True)

    abs_tol: float = Field(default=DEFAULT_ABS_TOL, gt=0.0)
    max_terms: int = Field(default=DEFAULT_MAX_TERMS, ge=8)


class PowerSeries(BaseModel):
    """Truncated power series sum a_n z^n; index n of ``coeffs`` holds a_n."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coeffs: np.ndarray
    tail_bound_hint: float = Field(
        default=0.0,
        ge=0.0,
        description="Bound on |sum_{n>N} a_n z^n| for |z| <= 1",
    )

    @field_validator("coeffs", mode="before")
    @classmethod
    def as_complex_array(cls, v: Any) -> np.ndarray:
        arr = np.array(v, dtype=complex)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coeffs must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coeffs must be finite")
        arr.setflags(write=False)
        return arr

    @computed_field
    @property
    def truncation_order(self) -> int:
        return int(self.coeffs.size) - 1

    def coefficient(self, n: int) -> complex:
        """a_n, or 0 beyond the retained order."""
        if n < 0 or n > self.truncation_order:
            return 0j
        return complex(self.coeffs[n])


# ---------------------------------------------------------------------------
# Parameter records
# ---------------------------------------------------------------------------


class BesselFamily(str, Enum):
    BESSEL = "bessel"
    MODIFIED = "modified"
    SPHERICAL = "spherical"
    MODIFIED_SPHERICAL = "modified_spherical"


# (b, c) for each classical case of the generalized Bessel equation
FAMILY_BC: dict[BesselFamily, tuple[int, int]] = {
    BesselFamily.BESSEL: (1, 1),
    BesselFamily.MODIFIED: (1, -1),
    BesselFamily.SPHERICAL: (2, 1),
    BesselFamily.MODIFIED_SPHERICAL: (2, -1),
}


class BesselParams(BaseModel):
    """Parameters (p, b, c) of u_{p,b,c}; kappa is always derived."""

    model_config = ConfigDict(frozen=True)

    p: complex
    b: complex = 1
    c: complex = 1

    @computed_field
    @property
    def kappa(self) -> complex:
        return self.p + (self.b + 1) / 2

    @model_validator(mode="after")
    def kappa_off_poles(self) -> BesselParams:
        if distance_to_nonpositive_integer(self.kappa) <= POLE_MARGIN:
            raise ValueError(
                f"kappa = p + (b+1)/2 = {self.kappa} must not be 0, -1, -2, ..."
            )
        return self

    @classmethod
    def for_family(cls, family: BesselFamily, p: complex) -> BesselParams:
        b, c = FAMILY_BC[family]
        return cls(p=p, b=b, c=c)

    @classmethod
    def from_kappa(cls, kappa: complex, c: complex, b: complex = 1) -> BesselParams:
        return cls(p=kappa - (b + 1) / 2, b=b, c=c)

    def shifted(self, dp: int) -> BesselParams:
        """Same b, c with p + dp (the recurrence partner u_{p+dp})."""
        return BesselParams(p=self.p + dp, b=self.b, c=self.c)


class LommelParams(BaseModel):
    """Parameters (mu, p) of h_{mu,p}; K, F, M, N are always derived."""

    model_config = ConfigDict(frozen=True)

    mu: complex
    p: complex

    @computed_field
    @property
    def K(self) -> complex:
        return (self.mu - self.p + 3) / 2

    @computed_field
    @property
    def F(self) -> complex:
        return (self.mu + self.p + 3) / 2

    @computed_field
    @property
    def M(self) -> complex:
        return (self.mu + 5) ** 2 - self.p**2

    @computed_field
    @property
    def N(self) -> complex:
        return (self.mu + 3) ** 2 - self.p**2

    @model_validator(mode="after")
    def mu_pm_p_not_negative_odd(self) -> LommelParams:
        for label, value in (("mu+p", self.mu + self.p), ("mu-p", self.mu - self.p)):
            if distance_to_negative_odd_integer(value) <= POLE_MARGIN:
                raise ValueError(
                    f"{label} = {value} must not be a negative odd integer"
                )
        return self

    @property
    def is_real(self) -> bool:
        return self.mu.imag == 0 and self.p.imag == 0


Params = Union[BesselParams, LommelParams]


# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------


class DiskSamplingPlan(BaseModel):
    model_config = ConfigDict(frozen=True)

    radii: tuple[float, ...] = DEFAULT_RADII
    r_max: float = Field(default=DEFAULT_R_MAX, gt=0.0, lt=1.0)
    points_per_circle: int = Field(
        default=DEFAULT_POINTS_PER_CIRCLE, ge=MIN_POINTS_PER_CIRCLE
    )

    @model_validator(mode="after")
    def radii_ascending_in_range(self) -> DiskSamplingPlan:
        if not self.radii:
            raise ValueError("radii must not be empty")
        if any(b <= a for a, b in zip(self.radii, self.radii[1:])):
            raise ValueError("radii must be strictly ascending")
        if self.radii[0] <= 0 or self.radii[-1] > self.r_max:
            raise ValueError(f"radii must lie in (0, r_max={self.r_max}]")
        return self

    def sample_points(self) -> np.ndarray:
        """All samples, circle-major, each circle starting on the positive real axis."""
        angles = 2 * np.pi * np.arange(self.points_per_circle) / self.points_per_circle
        ring = np.exp(1j * angles)
        return np.concatenate([r * ring for r in self.radii])


class FunctionalKind(str, Enum):
    CONVEXITY = "convexity"
    STARLIKENESS = "starlikeness"
    CARATHEODORY_SCALED = "caratheodory_scaled"
    REAL_PART = "real_part"


class SubordinationVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    holds: bool
    functional_kind: FunctionalKind
    min_margin: Optional[float] = None
    worst_z: Optional[complex] = None
    threshold: float = MARGIN_THRESHOLD
    inconclusive: bool = False
    radius_margins: list[float] = Field(default_factory=list)
    margin_monotone: bool = True
    max_abs_arg: Optional[float] = None
    detail: Optional[str] = None

    @model_validator(mode="after")
    def holds_matches_margin(self) -> SubordinationVerdict:
        expected = (
            not self.inconclusive
            and self.min_margin is not None
            and self.min_margin > self.threshold
        )
        if self.holds != expected:
            raise ValueError("holds must equal (min_margin > threshold) for a conclusive verdict")
        return self


# ---------------------------------------------------------------------------
# Theorems and admissibility
# ---------------------------------------------------------------------------


class TheoremId(str, Enum):
    T1_U_PRIME = "T1_u_prime"
    T2_U_CONVEX = "T2_u_convex"
    C1_ZU_STARLIKE = "C1_zu_starlike"
    T3_H_CONVEX = "T3_h_convex"
    T4_F_CONVEX = "T4_f_convex"
    T5_F_PRIME = "T5_f_prime"
    C2_ZH_PRIME_STARLIKE = "C2_zh_prime_starlike"
    C3_LIBERA_H_CONVEX = "C3_libera_h_convex"
    L1_U_POSITIVE_REAL = "L1_u_positive_real"


BESSEL_THEOREMS = (
    TheoremId.T1_U_PRIME,
    TheoremId.T2_U_CONVEX,
    TheoremId.C1_ZU_STARLIKE,
    TheoremId.L1_U_POSITIVE_REAL,
)
LOMMEL_THEOREMS = (
    TheoremId.T3_H_CONVEX,
    TheoremId.T4_F_CONVEX,
    TheoremId.T5_F_PRIME,
    TheoremId.C2_ZH_PRIME_STARLIKE,
    TheoremId.C3_LIBERA_H_CONVEX,
)


class ProofId(str, Enum):
    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    P5 = "P5"


class AdmissibleTriple(BaseModel):
    """Point (r, s, t) of the admissible set; r and s are derived from (theta, m)."""

    model_config = ConfigDict(frozen=True)

    theta: float
    m: float = Field(ge=1.0)
    t: complex

    @field_validator("theta")
    @classmethod
    def theta_open_interval(cls, v: float) -> float:
        if not -math.pi / 4 < v < math.pi / 4:
            raise ValueError("theta must lie in (-pi/4, pi/4)")
        return v

    @computed_field
    @property
    def r(self) -> complex:
        return math.sqrt(2 * math.cos(2 * self.theta)) * cmath.exp(1j * self.theta)

    @computed_field
    @property
    def s(self) -> complex:
        return self.m * cmath.exp(3j * self.theta) / (
            2 * math.sqrt(2 * math.cos(2 * self.theta))
        )

    @staticmethod
    def t_lower_bound(theta: float, m: float) -> float:
        return 3 * m**2 / (8 * math.sqrt(2 * math.cos(2 * theta)))

    @model_validator(mode="after")
    def t_constraint(self) -> AdmissibleTriple:
        lhs = ((self.t + self.s) * cmath.exp(-3j * self.theta)).real
        if lhs < self.t_lower_bound(self.theta, self.m) - 1e-12:
            raise ValueError("Re((t+s)e^{-3i theta}) below 3m^2/(8 sqrt(2cos 2theta))")
        return self

    @classmethod
    def on_boundary(
        cls, theta: float, m: float, offset: float = 0.0, imag: float = 0.0
    ) -> AdmissibleTriple:
        """Triple with Re((t+s)e^{-3i theta}) = bound + offset."""
        root = math.sqrt(2 * math.cos(2 * theta))
        s = m * cmath.exp(3j * theta) / (2 * root)
        target = complex(cls.t_lower_bound(theta, m) + offset, imag)
        return cls(theta=theta, m=m, t=target * cmath.exp(3j * theta) - s)


class TheoremReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    schema_version: str = SCHEMA_VERSION
    theorem_id: TheoremId
    params: dict[str, complex]
    condition_holds: bool
    condition_slack: float
    aux_slacks: dict[str, float] = Field(default_factory=dict)
    check_kind: FunctionalKind
    verdict: SubordinationVerdict
    consistent: bool

    @model_validator(mode="after")
    def consistency_is_one_directional(self) -> TheoremReport:
        counterexample = (
            self.condition_holds
            and not self.verdict.holds
            and not self.verdict.inconclusive
        )
        if self.consistent == counterexample:
            raise ValueError("consistent must equal NOT(condition holds AND conclusive verdict fails)")
        return self


class AdmissibilityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    schema_version: str = SCHEMA_VERSION
    proof_id: ProofId
    params: dict[str, complex]
    min_abs_psi: float
    arg_min: AdmissibleTriple
    arg_min_z: complex
    paper_bound: float
    min_s_r2_sq: float
    max_r_minus_1_sq: float
    m_max: float
    m_cap_validated: bool
    n_triples: int
    tolerance: float = ADMISSIBILITY_TOLERANCE

    @computed_field
    @property
    def ok(self) -> bool:
        return (
            self.paper_bound > 0
            and self.min_abs_psi >= self.paper_bound - self.tolerance
            and self.m_cap_validated
        )


# ---------------------------------------------------------------------------
# Region scans
# ---------------------------------------------------------------------------


class ScanFamily(str, Enum):
    BESSEL = "bessel"
    LOMMEL = "lommel"


class Axis(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    min: float
    max: float
    step: float = Field(gt=0.0)

    @model_validator(mode="after")
    def ordered(self) -> Axis:
        if self.max < self.min:
            raise ValueError(f"axis {self.name}: max < min")
        return self

    @computed_field
    @property
    def count(self) -> int:
        return int(math.floor((self.max - self.min) / self.step + 1e-9)) + 1

    def values(self) -> list[float]:
        return [round(self.min + i * self.step, 12) for i in range(self.count)]


class ScanCell(BaseModel):
    model_config = ConfigDict(frozen=True)

    theorem: TheoremId
    param1: float
    param2: float
    condition_slack: float
    verdict_margin: float
    consistent: bool


class RegionScanReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: ScanFamily
    axis1: Axis
    axis2: Axis
    theorems: list[TheoremId]
    cells: list[ScanCell]

    @model_validator(mode="after")
    def one_row_per_cell_and_theorem(self) -> RegionScanReport:
        expected = self.axis1.count * self.axis2.count * len(self.theorems)
        if len(self.cells) != expected:
            raise ValueError(f"expected {expected} cells, got {len(self.cells)}")
        return self


# ---------------------------------------------------------------------------
# Acceptance suite
# ---------------------------------------------------------------------------


class SuiteItemResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    detail: str = ""
    seconds: float = Field(default=0.0, ge=0.0)


class SuiteSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    schema_version: str = SCHEMA_VERSION
    quick: bool = False
    items: list[SuiteItemResult]

    @computed_field
    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    @property
    def first_failure(self) -> Optional[SuiteItemResult]:
        return next((item for item in self.items if not item.passed), None)
