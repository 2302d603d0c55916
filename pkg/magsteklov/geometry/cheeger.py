"""
Magnetic Cheeger quotients of rotationally symmetric test domains.

For the disk potential t r^2 dtheta every centered disk and every annulus
s < r < 1 has an exactly computable frustration constant, which makes
h = (iota + |d_I D|) / |D| and h' = (iota + |d_I D|) / |d_E D| explicit.
Minimizing over such a family only gives UPPER estimates of the true
infima, so the derived lower bound for sigma_1 is a diagnostic.
"""

import logging
import math
from typing import Optional, Sequence

from magsteklov import exc
from magsteklov.builders import lowest_disk_steklov
from magsteklov.engines import ModeSolver
from magsteklov.models import (
    Annulus,
    BoundReport,
    CenteredDisk,
    CheegerQuotients,
    FieldStrength,
    FrustrationResult,
    FrustrationSpec,
    HypothesisCheck,
    HypothesisStatus,
    PolynomialProfile,
    ReportStatus,
    TestDomain,
)

from .frustration import frustration_punctured, frustration_simply_connected

logger = logging.getLogger(__name__)


def domain_frustration(t: FieldStrength, domain: TestDomain) -> FrustrationResult:
    """Frustration constant of t r^2 dtheta on a test domain."""
    profile = PolynomialProfile.power(2, t)
    if isinstance(domain, CenteredDisk):
        return frustration_simply_connected(FrustrationSpec(profile=profile, r_outer=domain.s))
    return frustration_punctured(FrustrationSpec(profile=profile, r_inner=domain.s, r_outer=1.0, punctured=True))


def cheeger_quotients(t: FieldStrength, domain: TestDomain) -> CheegerQuotients:
    """
    Returns both Cheeger quotients of a test domain; h' is infinite for
    domains that do not touch the unit circle.

    >>> q = cheeger_quotients(1.0, CenteredDisk(s=1.0))
    >>> round(q.h_quotient, 12), round(q.h_prime_quotient, 12)
    (0.666666666667, 0.333333333333)
    """
    if t < 0:
        raise exc.InvalidParams(f"Cheeger quotients are defined for t >= 0, got {t}")
    iota = domain_frustration(t, domain).value
    numerator = iota + domain.interior_length
    exterior = domain.exterior_length
    return CheegerQuotients(
        domain=domain,
        frustration=iota,
        h_quotient=numerator / domain.area,
        h_prime_quotient=numerator / exterior if exterior > 0 else math.inf,
    )


def jammes_family(s_grid: Sequence[float]) -> list[TestDomain]:
    """CenteredDisk(s) for s > 0 and Annulus(s, 1) for s < 1, for every s in the grid."""
    family: list[TestDomain] = []
    for s in s_grid:
        if s > 0:
            family.append(CenteredDisk(s=s))
        if s < 1:
            family.append(Annulus(s=s))
    return family


def family_minima(t: FieldStrength, s_grid: Sequence[float]) -> tuple[float, float, int]:
    """(min h, min finite h', family size) over the test-domain family."""
    family = jammes_family(s_grid)
    if not family:
        raise exc.InvalidParams("The test-domain family is empty")
    quotients = [cheeger_quotients(t, domain) for domain in family]
    h_min = min(q.h_quotient for q in quotients)
    h_prime_min = min((q.h_prime_quotient for q in quotients if math.isfinite(q.h_prime_quotient)),
                      default=math.inf)
    return h_min, h_prime_min, len(family)


def jammes_diagnostic(
    t: FieldStrength, s_grid: Sequence[float], solver: Optional[ModeSolver] = None
) -> BoundReport:
    """
    Compares sigma_1 with h h' / 8 evaluated on the family minima.

    The family minima over-estimate h and h', so the comparison is either
    consistent or inconclusive; it never refutes the inequality.
    """
    h_min, h_prime_min, size = family_minima(t, s_grid)
    rhs = h_min * h_prime_min / 8 if math.isfinite(h_prime_min) else None
    sigma_1 = lowest_disk_steklov(t, solver)
    consistent = rhs is not None and sigma_1 >= rhs - 1e-12

    logger.info("Cheeger diagnostic at t=%s: sigma_1=%.6g, family estimate=%s", t, sigma_1, rhs)
    return BoundReport(
        name="cheeger-jammes",
        hypotheses=(
            HypothesisCheck(description="family minima equal the true Cheeger infima",
                            status=HypothesisStatus.NOT_CHECKED),
        ),
        lhs=sigma_1,
        rhs=rhs,
        satisfied=consistent,
        status=ReportStatus.CONSISTENT_UPPER_ESTIMATE if consistent else ReportStatus.INCONCLUSIVE,
        details={"h_family_min": h_min, "h_prime_family_min": h_prime_min, "family_size": size,
                 "estimate": "upper"},
    )
