"""
Core models for the magsteklov toolkit.

This module defines the data structures for radial ODE parameters, series
profiles, labeled spectra, frustration and Cheeger inputs and the bound
reports, using Pydantic for validation and immutability. The numerical
configuration knobs of the solvers live here as well.
"""

import math
from enum import Enum
from typing import Annotated, Final, Literal, Optional, Union

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from magsteklov import exc

# --- Constants for type-safe discriminators ---
CONST_POLYNOMIAL: Final = "polynomial"
CONST_SAMPLED: Final = "sampled"
CONST_DISK: Final = "disk"
CONST_ANNULUS: Final = "annulus"

# First zero of the Bessel function J0, used as a reference value only.
J0_FIRST_ZERO: Final = 2.404825557695773
# Leading constant of the large-field expansion of the lowest disk eigenvalue.
ASYMPTOTIC_ALPHA: Final = 0.7649508693

FieldStrength = float


class SpectralModel(str, Enum):
    """The four operators whose spectra the toolkit assembles."""
    DISK2 = "disk2"      # Steklov on the unit disk
    BALL4 = "ball4"      # Steklov on the unit 4-ball
    CIRCLE = "circle"    # magnetic Laplacian on S^1
    SPHERE3 = "sphere3"  # magnetic Laplacian on S^3

    @property
    def is_steklov(self) -> bool:
        """True for the two Dirichlet-to-Neumann models."""
        return self in (SpectralModel.DISK2, SpectralModel.BALL4)

    @property
    def uses_hopf_labels(self) -> bool:
        """True if modes are labeled by (p1, p2) instead of (k, sign)."""
        return self in (SpectralModel.BALL4, SpectralModel.SPHERE3)


class Sign(str, Enum):
    """Orientation of the angular mode e^{+-ik theta} on the disk and circle."""
    PLUS = "plus"
    MINUS = "minus"

    @property
    def factor(self) -> int:
        """+1 or -1."""
        return 1 if self is Sign.PLUS else -1


class HypothesisStatus(str, Enum):
    """Outcome of checking one hypothesis of a bound."""
    SATISFIED = "Satisfied"
    VIOLATED = "Violated"
    NOT_CHECKED = "NotChecked"


class ReportStatus(str, Enum):
    """
    Verdict attached to a BoundReport.

    There is deliberately no member meaning "theorem violated": diagnostics
    that compare against upper estimates only ever report consistency or
    inconclusiveness.
    """
    SATISFIED = "Satisfied"
    FAILED = "Failed"
    NOT_APPLICABLE = "NotApplicable"
    CONSISTENT_UPPER_ESTIMATE = "ConsistentUpperEstimate"
    INCONCLUSIVE = "Inconclusive"
    REPORT_ONLY = "ReportOnly"
    GAP_UNBOUNDED = "GapUnbounded"
    GAP_BOUNDED_ON_GRID = "GapBoundedOnGrid"


class Ball4Multiplicity(str, Enum):
    """How multiplicities are attached to (p1, p2) entries of 4-ball and S^3 tables."""
    CLUSTER = "cluster"  # k+1 per entry, (k+1)^2 per fixed-k cluster
    ENTRY = "entry"      # (k+1)^2 per entry

    def of(self, k: int) -> int:
        """Multiplicity of a single (p1, p2) entry with p1 + p2 = k."""
        return k + 1 if self is Ball4Multiplicity.CLUSTER else (k + 1) ** 2


# --- Numerical configuration ---

class SeriesConfig(BaseModel):
    """Knobs of the even-power Frobenius series."""
    model_config = ConfigDict(frozen=True)

    tail_tol: float = Field(default=1e-16, gt=0)
    max_terms: int = Field(default=10_000, gt=1)
    rescale_threshold: float = Field(default=1e150, gt=1)
    # below this |sum c_j| / max|c_j| the normalization is considered lost
    min_normalization_ratio: float = Field(default=1e-6, gt=0, lt=1)


class RiccatiConfig(BaseModel):
    """Knobs of the logarithmic-derivative integration u = Q'/Q."""
    model_config = ConfigDict(frozen=True)

    rel_tol: float = Field(default=1e-11, gt=0)
    abs_tol: float = Field(default=1e-12, gt=0)
    seed_terms: int = Field(default=16, ge=2)
    seed_ratio: float = Field(default=0.05, gt=0, lt=1)
    max_seed_radius: float = Field(default=0.25, gt=0, lt=1)
    pole_bound: float = Field(default=1e8, gt=0)
    method: Literal["DOP853", "RK45"] = "DOP853"


class OracleConfig(BaseModel):
    """Knobs of the independent Runge-Kutta oracle."""
    model_config = ConfigDict(frozen=True)

    seed_radius: float = Field(default=1e-3, gt=0, lt=1)
    seed_order: int = Field(default=6, ge=1)
    rel_tol: float = Field(default=1e-10, gt=0)
    abs_tol: float = Field(default=1e-12, gt=0)
    max_steps: int = Field(default=100_000, gt=0)
    method: Literal["DOP853", "RK45"] = "DOP853"


class SolverPolicy(BaseModel):
    """Chooses between the series and the Riccati path of a mode."""
    model_config = ConfigDict(frozen=True)

    riccati_threshold_b: float = Field(default=1e4, ge=0)
    series: SeriesConfig = SeriesConfig()
    riccati: RiccatiConfig = RiccatiConfig()


class Ball4Config(BaseModel):
    """Knobs of the closed-form 4-ball quotient."""
    model_config = ConfigDict(frozen=True)

    # |denominator| below this fraction of its largest summand counts as cancelled
    cancellation_ratio: float = Field(default=1e-5, gt=0, lt=1)
    small_t: float = Field(default=1e-3, ge=0)
    guard_digits: int = Field(default=20, ge=5)
    multiplicity: Ball4Multiplicity = Ball4Multiplicity.CLUSTER


# --- Radial ODE ---

class RadialODEParams(BaseModel):
    """
    Coefficients of Q'' + (c/r) Q' - (a + b r^2) Q = 0.

    The disk mode (k, +-) uses c = 2k+1, a = +-2kt, b = t^2; the 4-ball mode
    (p1, p2) uses c = 2k+3, a = 2t(2p1 - k), b = t^2 with k = p1 + p2. The full
    extension is r^k_power Q(r) times an angular factor.
    """
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    c: float
    a: float
    b: float = Field(ge=0)
    k_power: int = Field(ge=0)

    @classmethod
    def disk(cls, k: int, sign: Sign, t: FieldStrength) -> 'RadialODEParams':
        """Parameters of the disk mode e^{+-ik theta}."""
        return cls(c=2 * k + 1, a=2 * sign.factor * k * t, b=t * t, k_power=k)

    @classmethod
    def ball4(cls, p1: int, p2: int, t: FieldStrength) -> 'RadialODEParams':
        """Parameters of the 4-ball mode u^p1 v^p2."""
        k = p1 + p2
        return cls(c=2 * k + 3, a=2 * t * (2 * p1 - k), b=t * t, k_power=k)

    def require_valid(self) -> None:
        """
        Raises:
            exc.InvalidParams: If c <= 0, for which no regular solution exists.
        """
        if self.c <= 0:
            raise exc.InvalidParams(f"The friction coefficient c must be positive, got {self.c}")

    @property
    def half_order(self) -> float:
        """(c - 1) / 2, the shift in the recursion denominator 4j(j + (c-1)/2)."""
        return (self.c - 1.0) / 2.0


class RadialProfile(BaseModel):
    """
    Scaled even-power series Q(r) = sum_j c_j r^{2j}.

    The stored coefficients have largest magnitude 1 and a positive sum; the
    true normalized coefficients are coeffs * exp(scale_log), with Q(1) = 1.
    """
    model_config = ConfigDict(frozen=True)

    params: RadialODEParams
    coeffs: tuple[float, ...] = Field(min_length=1)
    scale_log: float
    truncation_order: int = Field(ge=0)
    normalized: bool = True

    def normalized_coefficients(self) -> np.ndarray:
        """The coefficients of the Q(1) = 1 normalization."""
        return np.asarray(self.coeffs) * math.exp(self.scale_log)


# --- Spectra ---

class ModeLabel(BaseModel):
    """
    Label of a single mode.

    Disk and circle modes carry (k, sign) with k = 0 only as PLUS; 4-ball and
    S^3 modes carry (p1, p2) with k = p1 + p2.
    """
    model_config = ConfigDict(frozen=True)

    model: SpectralModel
    k: int = Field(ge=0)
    sign: Optional[Sign] = None
    p1: Optional[int] = Field(default=None, ge=0)
    p2: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _check_indices(self) -> 'ModeLabel':
        if self.model.uses_hopf_labels:
            if self.p1 is None or self.p2 is None or self.sign is not None:
                raise ValueError(f"{self.model.value} modes are labeled by (p1, p2)")
            if self.p1 + self.p2 != self.k:
                raise ValueError(f"k must equal p1 + p2, got k={self.k}, p1={self.p1}, p2={self.p2}")
        else:
            if self.sign is None or self.p1 is not None or self.p2 is not None:
                raise ValueError(f"{self.model.value} modes are labeled by (k, sign)")
            if self.k == 0 and self.sign is not Sign.PLUS:
                raise ValueError("The k = 0 mode is listed once, with sign plus")
        return self

    @classmethod
    def angular(cls, model: SpectralModel, k: int, sign: Sign) -> 'ModeLabel':
        """Label of a disk or circle mode."""
        return cls(model=model, k=k, sign=sign)

    @classmethod
    def hopf(cls, model: SpectralModel, p1: int, p2: int) -> 'ModeLabel':
        """Label of a 4-ball or S^3 mode."""
        return cls(model=model, k=p1 + p2, p1=p1, p2=p2)

    @property
    def sort_key(self) -> tuple[str, int, str, int, int]:
        """Lexicographic tiebreak for equal eigenvalues."""
        return (
            self.model.value, self.k,
            self.sign.value if self.sign else "",
            -1 if self.p1 is None else self.p1,
            -1 if self.p2 is None else self.p2,
        )

    def __str__(self) -> str:
        if self.model.uses_hopf_labels:
            return f"{self.model.value}(p1={self.p1}, p2={self.p2})"
        return f"{self.model.value}(k={self.k}, {self.sign.value if self.sign else '?'})"


class SpectrumEntry(BaseModel):
    """A single eigenvalue with its label and multiplicity."""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    label: ModeLabel
    value: float = Field(ge=0)
    multiplicity: int = Field(default=1, ge=1)


class SpectrumTable(BaseModel):
    """
    Sorted eigenvalues of one model at one field strength t.

    The table contains every mode with k <= k_max; whether that suffices for a
    given rank is decided by the truncation check of the builders package.
    """
    model_config = ConfigDict(frozen=True)

    t: FieldStrength
    model: SpectralModel
    entries: tuple[SpectrumEntry, ...]
    k_max: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_sorted(self) -> 'SpectrumTable':
        values = [e.value for e in self.entries]
        if any(b < a for a, b in zip(values, values[1:])):
            raise ValueError("Spectrum entries must be sorted nondecreasing by value")
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def size(self) -> int:
        """Number of entries (not counting multiplicity)."""
        return len(self.entries)

    def values(self, with_multiplicity: bool = True) -> list[float]:
        """Sorted eigenvalues, each repeated by its multiplicity if requested."""
        if not with_multiplicity:
            return [e.value for e in self.entries]
        return [e.value for e in self.entries for _ in range(e.multiplicity)]

    def level_minima(self) -> dict[int, float]:
        """Smallest eigenvalue of every level k = 0..k_max."""
        minima: dict[int, float] = {}
        for entry in self.entries:
            k = entry.label.k
            if k not in minima or entry.value < minima[k]:
                minima[k] = entry.value
        return dict(sorted(minima.items()))

    def find(self, label: ModeLabel) -> SpectrumEntry:
        """Looks up the entry of a label."""
        for entry in self.entries:
            if entry.label == label:
                return entry
        raise KeyError(f"No entry for {label} in table")


class GapRow(BaseModel):
    """One row of a paired gap table (1-based index)."""
    model_config = ConfigDict(frozen=True)

    index: int = Field(ge=1)
    sigma: float
    sqrt_lambda: float
    gap: float


# --- Frustration ---

class PolynomialProfile(BaseModel):
    """Angular profile g(r) = sum_i coefficients[i] r^i."""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    kind: Literal["polynomial"] = CONST_POLYNOMIAL
    coefficients: tuple[float, ...] = Field(min_length=1)

    @classmethod
    def power(cls, exponent: int, coefficient: float = 1.0) -> 'PolynomialProfile':
        """The family g(r) = coefficient * r^exponent."""
        return cls(coefficients=(0.0,) * exponent + (coefficient,))

    def __call__(self, r: ArrayLike) -> np.ndarray:
        return np.polynomial.polynomial.polyval(np.asarray(r, dtype=float), self.coefficients)

    def crossings(self, m: float, lo: float, hi: float) -> list[float]:
        """Real roots of g(r) + m strictly inside (lo, hi)."""
        shifted = list(self.coefficients)
        shifted[0] += m
        if not any(shifted[1:]):
            return []
        roots = np.polynomial.polynomial.polyroots(shifted)
        real = roots[np.abs(roots.imag) < 1e-12].real
        return sorted(float(x) for x in real if lo < x < hi)

    def extrema(self, lo: float, hi: float) -> tuple[float, float]:
        """(min g, max g) over [lo, hi]."""
        candidates = [lo, hi]
        if len(self.coefficients) > 2:
            derivative = np.polynomial.polynomial.polyder(self.coefficients)
            candidates += PolynomialProfile(coefficients=tuple(derivative)).crossings(0.0, lo, hi)
        values = self(np.asarray(candidates))
        return float(values.min()), float(values.max())


class SampledProfile(BaseModel):
    """Angular profile given by samples, linearly interpolated."""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    kind: Literal["sampled"] = CONST_SAMPLED
    radii: tuple[float, ...] = Field(min_length=2)
    values: tuple[float, ...] = Field(min_length=2)

    @model_validator(mode="after")
    def _check_samples(self) -> 'SampledProfile':
        if len(self.radii) != len(self.values):
            raise ValueError("radii and values must have the same length")
        if any(b <= a for a, b in zip(self.radii, self.radii[1:])):
            raise ValueError("radii must be strictly increasing")
        return self

    def __call__(self, r: ArrayLike) -> np.ndarray:
        return np.interp(np.asarray(r, dtype=float), self.radii, self.values)

    def crossings(self, m: float, lo: float, hi: float) -> list[float]:
        """Sign changes of g(r) + m strictly inside (lo, hi), plus the sample nodes there."""
        r = np.asarray(self.radii)
        v = np.asarray(self.values) + m
        points = [float(x) for x in r if lo < x < hi]
        for i in np.nonzero(v[:-1] * v[1:] < 0)[0]:
            root = r[i] - v[i] * (r[i + 1] - r[i]) / (v[i + 1] - v[i])
            if lo < root < hi:
                points.append(float(root))
        return sorted(set(points))

    def extrema(self, lo: float, hi: float) -> tuple[float, float]:
        """(min g, max g) over [lo, hi]."""
        inside = [x for x in self.radii if lo < x < hi]
        values = self(np.asarray([lo, hi] + inside))
        return float(values.min()), float(values.max())


# Type alias for Pydantic polymorphic parsing
AngularProfile = Annotated[Union[PolynomialProfile, SampledProfile], Field(discriminator='kind')]


class FrustrationSpec(BaseModel):
    """
    Rotationally symmetric potential r^k dr + g(r) dtheta restricted to
    r_inner <= r <= r_outer.

    The exact r^k dr part is recorded only; it does not change the value.
    """
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    radial_power: int = Field(default=0, ge=0)
    profile: AngularProfile
    r_inner: float = Field(default=0.0, ge=0)
    r_outer: float = Field(default=1.0, gt=0)
    punctured: bool = False

    @model_validator(mode="after")
    def _check_interval(self) -> 'FrustrationSpec':
        if self.r_outer <= self.r_inner:
            raise ValueError(f"r_outer ({self.r_outer}) must exceed r_inner ({self.r_inner})")
        return self

    @property
    def punctured_or_annular(self) -> bool:
        """True iff the region is not simply connected."""
        return self.punctured or self.r_inner > 0


class FrustrationResult(BaseModel):
    """The frustration constant with its minimizing integer shift."""
    model_config = ConfigDict(frozen=True)

    value: float = Field(ge=0)
    minimizing_integer: int = 0
    quadrature_error_estimate: float = Field(default=0.0, ge=0)


# --- Cheeger test domains ---

class CenteredDisk(BaseModel):
    """The disk of radius s centered at the origin; s = 1 is the whole unit disk."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["disk"] = CONST_DISK
    s: float = Field(gt=0, le=1)

    @property
    def area(self) -> float:
        """|D|."""
        return math.pi * self.s ** 2

    @property
    def interior_length(self) -> float:
        """|boundary of D inside the open unit disk|."""
        return 0.0 if self.s == 1 else 2 * math.pi * self.s

    @property
    def exterior_length(self) -> float:
        """|boundary of D on the unit circle|."""
        return 2 * math.pi if self.s == 1 else 0.0


class Annulus(BaseModel):
    """The annulus s < r < 1; s = 0 is the punctured unit disk."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["annulus"] = CONST_ANNULUS
    s: float = Field(ge=0, lt=1)

    @property
    def area(self) -> float:
        """|D|."""
        return math.pi * (1 - self.s ** 2)

    @property
    def interior_length(self) -> float:
        """|boundary of D inside the open unit disk|."""
        return 2 * math.pi * self.s

    @property
    def exterior_length(self) -> float:
        """|boundary of D on the unit circle|."""
        return 2 * math.pi


TestDomain = Annotated[Union[CenteredDisk, Annulus], Field(discriminator='kind')]


class CheegerQuotients(BaseModel):
    """Frustration and both Cheeger quotients of one test domain."""
    model_config = ConfigDict(frozen=True)

    domain: TestDomain
    frustration: float = Field(ge=0)
    h_quotient: float
    # infinite when the domain does not touch the unit circle
    h_prime_quotient: float


# --- Bounds ---

class ThetaProfile(BaseModel):
    """
    Comparison density Theta(r) = (s_K'(r) - H0 s_K(r))^(m-1).

    s_K is sin(sqrt(K) r)/sqrt(K) for K > 0, r for K = 0 and
    sinh(sqrt(-K) r)/sqrt(-K) for K < 0.

    >>> ThetaProfile(curvature=0.0, boundary=1.0, dimension=2, radius=1.0).closed_form_integral()
    0.5
    """
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    curvature: float
    boundary: float
    dimension: int = Field(ge=1)
    radius: float = Field(gt=0)

    def s_k(self, r: ArrayLike) -> np.ndarray:
        """The generalized sine s_K."""
        r = np.asarray(r, dtype=float)
        if self.curvature > 0:
            root = math.sqrt(self.curvature)
            return np.sin(root * r) / root
        if self.curvature < 0:
            root = math.sqrt(-self.curvature)
            return np.sinh(root * r) / root
        return r

    def ds_k(self, r: ArrayLike) -> np.ndarray:
        """The derivative s_K'."""
        r = np.asarray(r, dtype=float)
        if self.curvature > 0:
            return np.cos(math.sqrt(self.curvature) * r)
        if self.curvature < 0:
            return np.cosh(math.sqrt(-self.curvature) * r)
        return np.ones_like(r)

    def base(self, r: ArrayLike) -> np.ndarray:
        """s_K' - H0 s_K, whose (m-1)-th power is Theta."""
        return self.ds_k(r) - self.boundary * self.s_k(r)

    def __call__(self, r: ArrayLike) -> np.ndarray:
        return self.base(r) ** (self.dimension - 1)

    def closed_form_integral(self) -> Optional[float]:
        """Integral of Theta over [0, R] when K = 0, otherwise None."""
        if self.curvature != 0:
            return None
        m, h, big_r = self.dimension, self.boundary, self.radius
        if h == 0:
            return big_r
        return (1 - (1 - h * big_r) ** m) / (h * m)


class HypothesisCheck(BaseModel):
    """One hypothesis of a bound together with its status."""
    model_config = ConfigDict(frozen=True)

    description: str
    status: HypothesisStatus


class BoundReport(BaseModel):
    """
    Outcome of a named inequality check.

    `satisfied` is only meaningful when the report is applicable, i.e. when
    every hypothesis is Satisfied.
    """
    model_config = ConfigDict(frozen=True)

    name: str
    hypotheses: tuple[HypothesisCheck, ...] = ()
    lhs: Optional[float] = None
    rhs: Optional[float] = None
    satisfied: bool = False
    status: ReportStatus = ReportStatus.REPORT_ONLY
    theorem_backed: bool = False
    details: dict[str, Union[float, int, str, bool, None]] = Field(default_factory=dict)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def applicable(self) -> bool:
        """True iff all hypotheses are Satisfied."""
        return all(h.status is HypothesisStatus.SATISFIED for h in self.hypotheses)


class ComparisonReport(BaseModel):
    """Gap rows of the Steklov versus sqrt(boundary Laplacian) comparison over a t-grid."""
    model_config = ConfigDict(frozen=True)

    model: SpectralModel
    n: int = Field(ge=1)
    rows: tuple[BoundReport, ...]
    status: ReportStatus
    max_lowest_gap: float
    max_abs_gap: float
    candidate_constant: float
