"""
The acceptance suite.

Each check reproduces one headline numerical claim (oracle agreement, closed
forms, asymptotics, bounds, gauge invariance) and reports the observed
deviation against its tolerance. The quick suite keeps t <= 10 and k <= 8.
Reports carry no timings so that repeated runs are byte-identical.
"""

import logging
import math
from enum import Enum
from typing import Callable, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, computed_field

from magsteklov import exc
from magsteklov.bounds import (
    asymptotic_check,
    asymptotic_prediction,
    comparison_report,
    first_bessel_zero,
    gauge_periodicity_check,
    max_principle_check,
    monotonicity_check,
    subharmonic_l2_check,
    upper_bound_disk,
)
from magsteklov.builders import ball4_steklov_value, disk_steklov_spectrum
from magsteklov.builders.spectra import hopf_labels
from magsteklov.engines import OracleModeSolver, StandardModeSolver, oracle_steklov_value
from magsteklov.geometry import frustration
from magsteklov.models import (
    J0_FIRST_ZERO,
    FrustrationSpec,
    PolynomialProfile,
    RadialODEParams,
    Sign,
    SpectralModel,
)

from .output import render_csv, render_json, spectrum_rows

logger = logging.getLogger(__name__)

Detail = Union[float, int, str, bool, None]


class CheckOutcome(str, Enum):
    """Outcome of one acceptance check."""
    PASS = "pass"
    FAIL = "fail"
    ERROR = "error"


class CheckResult(BaseModel):
    """Observed value, bound and tolerance of one acceptance check."""
    model_config = ConfigDict(frozen=True)

    name: str
    status: CheckOutcome
    lhs: Optional[float] = None
    rhs: Optional[float] = None
    tolerance: Optional[float] = None
    details: dict[str, Detail] = Field(default_factory=dict)


class VerifyReport(BaseModel):
    """All check results of one run, in registry order."""
    model_config = ConfigDict(frozen=True)

    quick: bool
    checks: tuple[CheckResult, ...]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        """True iff every check passed."""
        return all(check.status is CheckOutcome.PASS for check in self.checks)


AcceptanceCheck = Callable[[bool], Optional[CheckResult]]
ACCEPTANCE_CHECKS: dict[str, AcceptanceCheck] = {}


def acceptance(name: str) -> Callable[[AcceptanceCheck], AcceptanceCheck]:
    """Registers an acceptance check under name."""
    def register(check: AcceptanceCheck) -> AcceptanceCheck:
        ACCEPTANCE_CHECKS[name] = check
        return check
    return register


def _result(name: str, passed: bool, lhs: Optional[float], tolerance: Optional[float] = None,
            rhs: Optional[float] = None, **details: Detail) -> CheckResult:
    return CheckResult(name=name, status=CheckOutcome.PASS if passed else CheckOutcome.FAIL,
                       lhs=lhs, rhs=rhs, tolerance=tolerance, details=details)


def _disk_modes(k_max: int, t: float) -> list[RadialODEParams]:
    modes = [RadialODEParams.disk(0, Sign.PLUS, t)]
    for k in range(1, k_max + 1):
        modes += [RadialODEParams.disk(k, Sign.PLUS, t), RadialODEParams.disk(k, Sign.MINUS, t)]
    return modes


# --- Oracle agreement and closed forms ---

@acceptance("oracle-disk")
def check_oracle_disk(quick: bool) -> CheckResult:
    """Series/Riccati values against the Runge-Kutta oracle on the disk."""
    k_max, tolerance = (8 if quick else 20), 1e-8
    solver, oracle = StandardModeSolver(), OracleModeSolver()
    deviation = 0.0
    for t in (0.5, 1.0, 5.0, 10.0):
        modes = _disk_modes(k_max, t)
        values = solver.steklov_values(modes)
        references = oracle.steklov_values(modes)
        deviation = max(deviation, max(abs(a - b) for a, b in zip(values, references)))
    return _result("oracle-disk", deviation <= tolerance, deviation, tolerance, k_max=k_max)


@acceptance("oracle-ball4")
def check_oracle_ball4(quick: bool) -> CheckResult:
    """Closed-form 4-ball values against the Runge-Kutta oracle."""
    k_max, tolerance = (6 if quick else 8), 1e-8
    deviation = 0.0
    for t in (0.5, 1.0, 2.0, 5.0):
        for label in hopf_labels(SpectralModel.BALL4, k_max):
            p1, p2 = label.p1 or 0, label.p2 or 0
            value = ball4_steklov_value(p1, p2, t)
            reference = oracle_steklov_value(RadialODEParams.ball4(p1, p2, t))
            deviation = max(deviation, abs(value - reference))
    return _result("oracle-ball4", deviation <= tolerance, deviation, tolerance, k_max=k_max)


@acceptance("closed-form-ball4")
def check_closed_form(quick: bool) -> CheckResult:
    """sigma(0, 0; t) = t coth(t/2) - 2."""
    tolerance = 1e-10
    grid = (0.1, 1.0, 5.0) if quick else (0.1, 1.0, 5.0, 20.0)
    deviation = max(abs(ball4_steklov_value(0, 0, t) - (t / math.tanh(t / 2) - 2)) for t in grid)
    return _result("closed-form-ball4", deviation <= tolerance, deviation, tolerance)


@acceptance("non-magnetic-disk")
def check_non_magnetic_disk(quick: bool) -> CheckResult:
    """At t = 0 the disk spectrum is sigma = k."""
    k_max, tolerance = (8 if quick else 20), 1e-12
    table = disk_steklov_spectrum(0.0, k_max)
    deviation = max(abs(entry.value - entry.label.k) for entry in table.entries)
    return _result("non-magnetic-disk", deviation <= tolerance, deviation, tolerance, k_max=k_max)


@acceptance("non-magnetic-ball4")
def check_non_magnetic_ball4(quick: bool) -> CheckResult:
    """Near t = 0 the 4-ball spectrum approaches sigma = p1 + p2."""
    k_max, tolerance = 8, 1e-4
    deviation = max(abs(ball4_steklov_value(label.p1 or 0, label.p2 or 0, 1e-6) - label.k)
                    for label in hopf_labels(SpectralModel.BALL4, k_max))
    return _result("non-magnetic-ball4", deviation <= tolerance, deviation, tolerance, t=1e-6)


# --- Lowest eigenvalue ---

@acceptance("asymptotic")
def check_asymptotic(quick: bool) -> Optional[CheckResult]:
    """sigma_1(400) against the large-field expansion and the log-log growth exponent."""
    if quick:
        return None
    tolerance = 0.05
    report = asymptotic_check([100.0, 200.0, 400.0])
    sigma = float(report.details["sigma_1(t=400)"] or math.nan)
    deviation = abs(sigma - asymptotic_prediction(400.0))
    exponent = report.details["exponent"]
    exponent_ok = isinstance(exponent, float) and 0.45 <= exponent <= 0.55
    return _result("asymptotic", deviation <= tolerance and exponent_ok, deviation, tolerance,
                   rhs=asymptotic_prediction(400.0), exponent=exponent)


@acceptance("monotonicity")
def check_monotonicity(quick: bool) -> CheckResult:
    """sigma_1(t) strictly increasing along a doubling grid."""
    grid = [0.5, 1.0, 2.0, 4.0, 8.0] + ([] if quick else [16.0, 32.0])
    report = monotonicity_check(grid)
    return _result("monotonicity", report.satisfied, report.lhs, 0.0, rhs=report.rhs, points=len(grid))


# --- Extension estimates ---

def _extension_grid(quick: bool) -> list[tuple[int, Sign, float]]:
    k_max = 8 if quick else 10
    fields = (0.0, 1.0, 5.0) if quick else (0.0, 1.0, 5.0, 50.0)
    grid = []
    for t in fields:
        grid.append((0, Sign.PLUS, t))
        for k in range(1, k_max + 1):
            grid += [(k, Sign.PLUS, t), (k, Sign.MINUS, t)]
    return grid


@acceptance("max-principle")
def check_max_principle(quick: bool) -> CheckResult:
    """max |Q r^k| <= 1 on 1001-point grids."""
    tolerance = 1e-10
    grid = _extension_grid(quick)
    worst = max(max_principle_check(k, sign, t).lhs or 0.0 for k, sign, t in grid)
    return _result("max-principle", worst <= 1 + tolerance, worst, tolerance, rhs=1.0, modes=len(grid))


@acceptance("subharmonic-l2")
def check_subharmonic_l2(quick: bool) -> CheckResult:
    """Interior L2 norm against pi, with equality for the constant mode at t = 0."""
    tolerance = 1e-9
    grid = _extension_grid(quick)
    worst = max(subharmonic_l2_check(k, sign, t).lhs or 0.0 for k, sign, t in grid)
    constant = subharmonic_l2_check(0, Sign.PLUS, 0.0).lhs or 0.0
    equality = abs(constant - math.pi)
    passed = worst <= math.pi + tolerance and equality <= 1e-12
    return _result("subharmonic-l2", passed, worst, tolerance, rhs=math.pi, equality_deviation=equality)


# --- Frustration ---

@acceptance("frustration")
def check_frustration(quick: bool) -> CheckResult:
    """Closed forms on the disk and the punctured disk."""
    tolerance = 1e-9
    cases = [
        (FrustrationSpec(profile=PolynomialProfile.power(2)), 2 * math.pi / 3),
        (FrustrationSpec(profile=PolynomialProfile.power(0), punctured=True), 0.0),
    ]
    cases += [(FrustrationSpec(profile=PolynomialProfile.power(ell), punctured=True), 2 * math.pi / (ell + 1))
              for ell in range(1, 7)]
    deviation = max(abs(frustration(spec).value - expected) for spec, expected in cases)
    return _result("frustration", deviation <= tolerance, deviation, tolerance, cases=len(cases))


# --- Bounds ---

@acceptance("upper-bound")
def check_upper_bound(quick: bool) -> CheckResult:
    """sigma_1 <= 2 t^2 / j01^2 with j01 computed by bisection."""
    tolerance = 1e-9
    j0_error = abs(first_bessel_zero() - J0_FIRST_ZERO)
    reports = [upper_bound_disk(t) for t in (0.25, 0.5, 1.0, 2.0, 4.0)]
    excess = max((r.lhs or 0.0) - (r.rhs or 0.0) for r in reports)
    passed = j0_error <= tolerance and all(r.satisfied for r in reports)
    return _result("upper-bound", passed, excess, tolerance, rhs=0.0, j01_error=j0_error)


@acceptance("gauge-periodicity")
def check_gauge_periodicity(quick: bool) -> CheckResult:
    """Circle spectra at t and t + 1 agree on the reliable window."""
    k_max, tolerance = (8 if quick else 20), 1e-12
    reports = [gauge_periodicity_check(t, k_max) for t in (0.0, 0.3, 0.5, 0.77)]
    deviation = max(r.lhs or 0.0 for r in reports)
    return _result("gauge-periodicity", all(r.satisfied for r in reports), deviation, tolerance, k_max=k_max)


@acceptance("comparison-gap")
def check_comparison(quick: bool) -> Optional[CheckResult]:
    """The lowest disk gap exceeds 10 at t = 400 while sqrt(lambda_1) <= 0.5."""
    if quick:
        return None
    report = comparison_report(SpectralModel.DISK2, [400.0], 1)
    row = report.rows[-1]
    root = row.details["sqrt_lambda_1"]
    passed = row.lhs is not None and row.lhs > report.candidate_constant and isinstance(root, float) and root <= 0.5
    return _result("comparison-gap", passed, row.lhs, rhs=report.candidate_constant, sqrt_lambda_1=root,
                   status=report.status.value)


@acceptance("render-determinism")
def check_render_determinism(quick: bool) -> CheckResult:
    """
    A small disk sweep, evaluated and rendered twice, gives identical csv and json text.

    This covers evaluation and rendering inside one process. Separate verify
    runs writing byte-identical reports is covered by the command tests.
    """
    def render() -> tuple[str, str]:
        rows = spectrum_rows(disk_steklov_spectrum(t, 3) for t in (0.0, 0.5, 1.0))
        return render_csv(rows), render_json("spectrum", {"k_max": 3}, "rows", rows)

    first, second = render(), render()
    return _result("render-determinism", first == second, None, characters=sum(len(text) for text in first))


def run_acceptance(quick: bool = False) -> VerifyReport:
    """
    Runs every registered check. A check raising a MagSteklovError is
    reported with status error instead of stopping the run.
    """
    results = []
    for name, check in ACCEPTANCE_CHECKS.items():
        try:
            result = check(quick)
        except exc.MagSteklovError as error:
            logger.error("Check %s raised %s: %s", name, type(error).__name__, error)
            result = CheckResult(name=name, status=CheckOutcome.ERROR,
                                 details={"error": type(error).__name__, "message": str(error)})
        if result is None:
            logger.info("Check %s is not part of the quick suite", name)
            continue
        logger.info("Check %s: %s (lhs=%s, tolerance=%s)", name, result.status.value, result.lhs, result.tolerance)
        results.append(result)
    return VerifyReport(quick=quick, checks=tuple(results))
