"""
Numerical checks of the eigenvalue bounds on the unit disk and 4-ball.

Every check returns a BoundReport. Theorem-backed reports whose hypotheses
are all Satisfied must come out satisfied; diagnostics and report-only
items never claim a violation.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from magsteklov import exc
from magsteklov.builders import (
    builder_for,
    circle_laplacian_spectrum,
    lowest_disk_steklov,
    paired_gap_table,
    sufficient_table,
)
from magsteklov.engines import ModeSolver, StandardModeSolver
from magsteklov.geometry import family_minima
from magsteklov.models import (
    ASYMPTOTIC_ALPHA,
    BoundReport,
    ComparisonReport,
    FieldStrength,
    HypothesisCheck,
    HypothesisStatus,
    RadialODEParams,
    ReportStatus,
    Sign,
    SpectralModel,
    ThetaProfile,
)

from .bessel import dirichlet_disk_eigenvalue

logger = logging.getLogger(__name__)

MAX_PRINCIPLE_TOL = 1e-10
L2_TOL = 1e-9
UPPER_BOUND_TOL = 1e-9
GAUGE_TOL = 1e-12
# uniform points of [0, R), endpoint excluded, bracketing sign changes of the Theta base
THETA_GRID_POINTS = 257
EXPONENT_RANGE = (0.45, 0.55)
GAP_CANDIDATE_CONSTANT = 10.0

_DISK_FLAT = ThetaProfile(curvature=0.0, boundary=1.0, dimension=2, radius=1.0)


def _satisfied(description: str) -> HypothesisCheck:
    return HypothesisCheck(description=description, status=HypothesisStatus.SATISFIED)


def _status(applicable: bool, satisfied: bool) -> ReportStatus:
    if not applicable:
        return ReportStatus.NOT_APPLICABLE
    return ReportStatus.SATISFIED if satisfied else ReportStatus.FAILED


def _disk_mode(k: int, sign: Sign, t: FieldStrength) -> RadialODEParams:
    return RadialODEParams.disk(k, Sign.PLUS if k == 0 else sign, t)


# --- Theta ---

def theta_base_root(theta: ThetaProfile) -> Optional[float]:
    """
    First zero of the base s_K' - H0 s_K in [0, R), or None.

    Sign changes are bracketed on the grid, so zeros between grid points
    are found too; a zero exactly at R does not count.
    """
    grid = np.linspace(0.0, theta.radius, THETA_GRID_POINTS + 1)
    base = theta.base(grid)
    for i in range(THETA_GRID_POINTS):
        if base[i] == 0:
            return float(grid[i])
        if base[i] * base[i + 1] < 0:
            return float(brentq(lambda r: float(theta.base(r)), grid[i], grid[i + 1], xtol=1e-14))
    return None


def check_theta_positive(theta: ThetaProfile) -> Optional[float]:
    """
    Checks Theta > 0 on [0, R) through the sign of its base.

    An odd power m - 1 changes sign with the base. An even power only
    touches zero there; that radius is returned instead of raised.

    Returns:
        The radius where Theta touches zero, or None.

    Raises:
        exc.ThetaNonpositive: If Theta changes sign inside [0, R).
    """
    if theta.dimension == 1:
        return None
    root = theta_base_root(theta)
    if root is None:
        return None
    if (theta.dimension - 1) % 2:
        raise exc.ThetaNonpositive(f"Theta changes sign at r = {root:.6f}", radius=root)
    logger.warning("Theta touches zero at r = %.6f", root)
    return root


def theta_integral(theta: ThetaProfile) -> float:
    """Integral of Theta over [0, R]; closed form for K = 0, quadrature otherwise."""
    closed = theta.closed_form_integral()
    if closed is not None:
        return closed
    result = quad(lambda r: float(theta(r)), 0.0, theta.radius, epsabs=1e-14, epsrel=1e-12, limit=200, full_output=1)
    if len(result) > 3:
        raise exc.QuadratureFailure(f"Theta quadrature failed: {result[3]}")
    return float(result[0])


# --- Maximum principle and subharmonic estimate ---

def max_principle_check(
    k: int, sign: Sign, t: FieldStrength,
    r_grid: Optional[Sequence[float]] = None,
    solver: Optional[ModeSolver] = None,
) -> BoundReport:
    """
    max_r |Q(r) r^k| over the grid against the boundary value 1.

    Raises:
        exc.InvalidParams: If the grid leaves [0, 1] or misses r = 1.
    """
    radii = np.linspace(0.0, 1.0, 1001) if r_grid is None else np.asarray(r_grid, dtype=float)
    if radii.min() < 0 or radii.max() != 1.0:
        raise exc.InvalidParams("The radial grid must lie in [0, 1] and contain r = 1")

    extension = (solver or StandardModeSolver()).extension(_disk_mode(k, sign, t))
    lhs = float(np.max(np.abs(extension(radii))))
    satisfied = lhs <= 1 + MAX_PRINCIPLE_TOL
    return BoundReport(
        name="max-principle",
        hypotheses=(_satisfied("extension of a boundary function of modulus 1"),),
        lhs=lhs, rhs=1.0, satisfied=satisfied, status=_status(True, satisfied), theorem_backed=True,
        details={"k": k, "sign": sign.value, "t": t, "grid_points": int(radii.size)},
    )


def subharmonic_l2_check(k: int, sign: Sign, t: FieldStrength, solver: Optional[ModeSolver] = None) -> BoundReport:
    """2 pi int_0^1 |Q r^k|^2 r dr against (int Theta) times the boundary norm 2 pi."""
    extension = (solver or StandardModeSolver()).extension(_disk_mode(k, sign, t))
    result = quad(lambda r: float(extension(r)) ** 2 * r, 0.0, 1.0, epsabs=1e-15, epsrel=1e-12, limit=200,
                  full_output=1)
    if len(result) > 3:
        raise exc.QuadratureFailure(f"L2 quadrature failed: {result[3]}", k=k, t=t)

    lhs = 2 * math.pi * float(result[0])
    rhs = 2 * math.pi * theta_integral(_DISK_FLAT)
    satisfied = lhs <= rhs + L2_TOL
    return BoundReport(
        name="subharmonic-l2",
        hypotheses=(_satisfied("|f| nonnegative and subharmonic"), _satisfied("flat unit disk, K=0, H0=1")),
        lhs=lhs, rhs=rhs, satisfied=satisfied, status=_status(True, satisfied), theorem_backed=True,
        details={"k": k, "sign": sign.value, "t": t, "quadrature_error": float(result[1])},
    )


# --- Upper and lower eigenvalue bounds ---

def upper_bound_disk(t: FieldStrength, solver: Optional[ModeSolver] = None) -> BoundReport:
    """
    sigma_1 <= ||d eta||^2 / (|boundary| lambda_1'') = 2 t^2 / j_{0,1}^2.

    >>> report = upper_bound_disk(0.0)
    >>> report.lhs, report.rhs, report.satisfied
    (0.0, 0.0, True)
    """
    dirichlet = dirichlet_disk_eigenvalue()
    rhs = 2 * t * t / dirichlet
    lhs = lowest_disk_steklov(t, solver)
    satisfied = lhs <= rhs + UPPER_BOUND_TOL
    return BoundReport(
        name="upper-bound-disk",
        hypotheses=(
            _satisfied("first Betti number of the disk is 0"),
            _satisfied("eta = t(-y dx + x dy) is co-closed and tangential on the circle"),
        ),
        lhs=lhs, rhs=rhs, satisfied=satisfied, status=_status(True, satisfied), theorem_backed=True,
        details={"t": t, "dirichlet_lambda_1": dirichlet, "ratio": lhs / rhs if rhs > 0 else None},
    )


def reilly_lower_bound(
    m: int, alpha: float, d_eta_sup: float, lambda1_boundary: float, theta: ThetaProfile,
    hypotheses: Sequence[HypothesisCheck], sigma_1: Optional[float] = None,
) -> BoundReport:
    """
    sigma_1 >= alpha/2 - ||d eta||_inf^2 (int_0^R Theta) / (2 lambda_1(boundary)).

    The hypotheses (Ricci and second fundamental form bounds, nontrivial
    boundary potential) are caller-supplied statuses. The right side is
    None when the boundary eigenvalue vanishes. If Theta only touches zero
    inside [0, R) the right side is still evaluated, but the positivity
    hypothesis is added as Violated.

    Raises:
        exc.ThetaNonpositive: If Theta changes sign inside [0, R).
    """
    if m < 2:
        raise exc.InvalidParams(f"The dimension must be at least 2, got {m}")
    touch = check_theta_positive(theta)
    checks = tuple(hypotheses)
    if touch is not None:
        checks += (HypothesisCheck(description="Theta positive on [0, R)", status=HypothesisStatus.VIOLATED),)
    integral = theta_integral(theta)
    rhs = alpha / 2 - d_eta_sup ** 2 * integral / (2 * lambda1_boundary) if lambda1_boundary > 0 else None

    report = BoundReport(name="reilly-lower-bound", hypotheses=checks, lhs=sigma_1, rhs=rhs, theorem_backed=True,
                         details={"theta_integral": integral, "m": m, "alpha": alpha, "theta_zero_radius": touch})
    satisfied = sigma_1 is not None and rhs is not None and sigma_1 >= rhs - UPPER_BOUND_TOL
    if sigma_1 is None or rhs is None:
        status = ReportStatus.REPORT_ONLY if report.applicable else ReportStatus.NOT_APPLICABLE
    else:
        status = _status(report.applicable, satisfied)
    return report.model_copy(update={"satisfied": satisfied, "status": status})


def reilly_flat_disk(t: FieldStrength, solver: Optional[ModeSolver] = None) -> BoundReport:
    """
    The lower bound for the flat unit disk with eta = t(-y dx + x dy).

    Ric = 0 cannot dominate ||d eta|| = 2t for t > 0, and Theta changes sign
    inside (0, 1) there, in which case the right side is reported as None.
    """
    d_eta = 2 * abs(t)
    lambda1 = (t - round(t)) ** 2
    hypotheses = [
        HypothesisCheck(description="Ric >= ||d eta||_inf",
                        status=HypothesisStatus.SATISFIED if d_eta == 0 else HypothesisStatus.VIOLATED),
        _satisfied("II >= alpha = 1 > 0"),
        HypothesisCheck(description="boundary potential is not gauge trivial",
                        status=HypothesisStatus.SATISFIED if lambda1 > 0 else HypothesisStatus.VIOLATED),
    ]
    theta = ThetaProfile(curvature=d_eta, boundary=1.0, dimension=2, radius=1.0)
    sigma_1 = lowest_disk_steklov(t, solver)
    try:
        return reilly_lower_bound(2, 1.0, d_eta, lambda1, theta, hypotheses, sigma_1=sigma_1)
    except exc.ThetaNonpositive as error:
        logger.info("Theta is not positive for the flat disk at t=%s: %s", t, error)
        hypotheses.append(HypothesisCheck(description="Theta positive on [0, R)", status=HypothesisStatus.VIOLATED))
        return BoundReport(name="reilly-lower-bound", hypotheses=tuple(hypotheses), lhs=sigma_1, rhs=None,
                           status=ReportStatus.NOT_APPLICABLE, theorem_backed=True, details={"t": t})


# --- Large field and monotonicity ---

def asymptotic_prediction(t: FieldStrength) -> float:
    """
    alpha sqrt(t) - (alpha^2 + 2)/6.

    >>> round(asymptotic_prediction(400.0), 3)
    14.868
    """
    return ASYMPTOTIC_ALPHA * math.sqrt(t) - (ASYMPTOTIC_ALPHA ** 2 + 2) / 6


def asymptotic_check(
    t_values: Sequence[float], tolerance_factor: float = 3.0, solver: Optional[ModeSolver] = None
) -> BoundReport:
    """
    Deviation of sigma_1(t) from the large-field expansion, with the growth
    exponent of a log-log fit over t_values.
    """
    if not t_values or min(t_values) < 50:
        raise exc.InvalidParams("The asymptotic check needs field strengths t >= 50")
    ts = sorted(t_values)
    sigmas = [lowest_disk_steklov(t, solver) for t in ts]
    deviation = max(abs(s - asymptotic_prediction(t)) for s, t in zip(sigmas, ts))
    tolerance = tolerance_factor / math.sqrt(ts[0])
    exponent = float(np.polyfit(np.log(ts), np.log(sigmas), 1)[0]) if len(ts) > 1 else None
    monotone = all(a < b for a, b in zip(sigmas, sigmas[1:]))

    satisfied = deviation <= tolerance and (
        exponent is None or EXPONENT_RANGE[0] <= exponent <= EXPONENT_RANGE[1])
    details: dict = {"tolerance": tolerance, "exponent": exponent, "monotone": monotone}
    details.update({f"sigma_1(t={t:g})": s for t, s in zip(ts, sigmas)})
    return BoundReport(name="asymptotic", lhs=deviation, rhs=tolerance, satisfied=satisfied,
                       status=_status(True, satisfied), theorem_backed=True, details=details)


def monotonicity_check(t_values: Sequence[float], solver: Optional[ModeSolver] = None) -> BoundReport:
    """sigma_1(t) strictly increasing over t_values."""
    ts = sorted(t_values)
    sigmas = [lowest_disk_steklov(t, solver) for t in ts]
    steps = [b - a for a, b in zip(sigmas, sigmas[1:])]
    satisfied = all(step > 0 for step in steps)
    details: dict = {f"sigma_1(t={t:g})": s for t, s in zip(ts, sigmas)}
    return BoundReport(name="monotonicity", lhs=min(steps, default=None), rhs=0.0, satisfied=satisfied,
                       status=_status(True, satisfied), theorem_backed=True, details=details)


# --- Gauge invariance ---

def gauge_periodicity_check(t: FieldStrength, k_max: int) -> BoundReport:
    """
    Circle spectra at t and t + 1 agree as multisets below (k_max - 2 + min(t, 1))^2.

    Raises:
        exc.TruncationInsufficient: If that window is empty or reaches past
            the modes the two tables are complete for.
    """
    window = (k_max - 2 + min(t, 1.0)) ** 2
    complete = (k_max + 1 - max(abs(t), abs(t + 1))) ** 2 if k_max + 1 > max(abs(t), abs(t + 1)) else 0.0
    if k_max - 2 + min(t, 1.0) <= 0 or window > complete:
        raise exc.TruncationInsufficient(f"No reliable window for t={t} at k_max={k_max}", t=t, k_max=k_max)

    cutoff = window - 1e-9
    first = [v for v in circle_laplacian_spectrum(t, k_max).values() if v < cutoff]
    second = [v for v in circle_laplacian_spectrum(t + 1, k_max).values() if v < cutoff]
    deviation = max((abs(a - b) for a, b in zip(first, second)), default=0.0)
    satisfied = len(first) == len(second) and deviation <= GAUGE_TOL
    return BoundReport(
        name="gauge-periodicity",
        hypotheses=(_satisfied("d theta has integer period on the circle"),),
        lhs=deviation if len(first) == len(second) else math.inf, rhs=GAUGE_TOL,
        satisfied=satisfied, status=_status(True, satisfied), theorem_backed=True,
        details={"t": t, "window": window, "compared": len(first)},
    )


# --- Spectral comparison ---

def comparison_report(
    model: SpectralModel, t_grid: Sequence[float], n: int,
    candidate_constant: float = GAP_CANDIDATE_CONSTANT, solver: Optional[ModeSolver] = None,
) -> ComparisonReport:
    """
    Gaps sigma_k - sqrt(lambda_k) of the Steklov spectrum against its
    boundary Laplacian over a t-grid.

    For the disk the lowest gap exceeding candidate_constant somewhere on
    the grid exhibits that no uniform constant exists; for the 4-ball the
    observed maximum is reported.
    """
    boundary_model = {SpectralModel.DISK2: SpectralModel.CIRCLE, SpectralModel.BALL4: SpectralModel.SPHERE3}.get(model)
    if boundary_model is None:
        raise exc.InvalidParams(f"Comparison needs a Steklov model, got {model.value}")

    rows = []
    for t in t_grid:
        steklov = sufficient_table(builder_for(model, solver), t, n)
        boundary = sufficient_table(builder_for(boundary_model), t, n)
        gaps = paired_gap_table(steklov, boundary, n)
        rows.append(BoundReport(
            name="comparison-gap", lhs=gaps[0].gap, status=ReportStatus.REPORT_ONLY,
            details={"t": t, "sigma_1": gaps[0].sigma, "sqrt_lambda_1": gaps[0].sqrt_lambda,
                     "max_abs_gap": max(abs(g.gap) for g in gaps), "n": n},
        ))

    max_lowest = max(row.lhs or 0.0 for row in rows)
    max_abs = max(float(row.details["max_abs_gap"] or 0.0) for row in rows)
    if model is SpectralModel.DISK2 and max_lowest > candidate_constant:
        status = ReportStatus.GAP_UNBOUNDED
    else:
        status = ReportStatus.GAP_BOUNDED_ON_GRID
    logger.info("Comparison for %s over %d field strengths: %s", model.value, len(rows), status.value)
    return ComparisonReport(model=model, n=n, rows=tuple(rows), status=status, max_lowest_gap=max_lowest,
                            max_abs_gap=max_abs, candidate_constant=candidate_constant)


def neumann_cheeger_diagnostic(t: FieldStrength, s_grid: Sequence[float]) -> BoundReport:
    """
    The Neumann analogue lambda_1 >= h^2 / 8, reported as the family estimate only.
    """
    h_min, _, size = family_minima(t, s_grid)
    return BoundReport(name="neumann-cheeger", rhs=h_min ** 2 / 8, status=ReportStatus.REPORT_ONLY,
                       details={"h_family_min": h_min, "family_size": size, "estimate": "upper"})
