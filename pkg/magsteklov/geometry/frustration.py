"""
Magnetic frustration constants of rotationally symmetric potentials.

For eta = r^k dr + g(r) dtheta the infimum over gauges reduces circle by
circle to an integer shift of g: on a disk every gauge form is exact and
the constant is 2 pi int |g|, on an annulus or punctured disk the closed
form dtheta may be added and the constant is 2 pi min_m int |g + m|.
"""

import logging
import math

from scipy.integrate import quad

from magsteklov import exc
from magsteklov.models import AngularProfile, FrustrationResult, FrustrationSpec

logger = logging.getLogger(__name__)

# |g(0)| above this makes the potential singular at the origin
_ORIGIN_TOL = 1e-12
# relative slack under which two integer shifts count as tied
_TIE_TOL = 1e-12


def absolute_integral(profile: AngularProfile, shift: float, lo: float, hi: float) -> tuple[float, float]:
    """
    Returns (int_lo^hi |g(r) + shift| dr, error estimate).

    The interval is split at the crossings of g + shift so that every panel
    has a smooth integrand.
    """
    edges = [lo] + profile.crossings(shift, lo, hi) + [hi]
    value, error = 0.0, 0.0
    for left, right in zip(edges, edges[1:]):
        result = quad(lambda r: abs(float(profile(r)) + shift), left, right,
                      epsabs=1e-14, epsrel=1e-12, limit=200, full_output=1)
        if len(result) > 3:
            raise exc.QuadratureFailure(f"Quadrature on [{left}, {right}] failed: {result[3]}",
                                        left=left, right=right)
        value += result[0]
        error += result[1]
    return value, error


def frustration_simply_connected(spec: FrustrationSpec) -> FrustrationResult:
    """
    Frustration constant of a centered disk: 2 pi int_0^r0 |g(r)| dr.

    Raises:
        exc.InvalidParams: If the region is punctured or annular.
        exc.IllDefinedAtOrigin: If g(0) != 0.

    >>> from magsteklov.models import PolynomialProfile
    >>> spec = FrustrationSpec(profile=PolynomialProfile.power(2), r_outer=1.0)
    >>> abs(frustration_simply_connected(spec).value - 2 * math.pi / 3) < 1e-12
    True
    """
    if spec.punctured_or_annular:
        raise exc.InvalidParams("The region is not simply connected, use frustration_punctured")
    at_origin = float(spec.profile(0.0))
    if abs(at_origin) > _ORIGIN_TOL:
        raise exc.IllDefinedAtOrigin(f"g(0) = {at_origin} does not vanish at the origin")

    value, error = absolute_integral(spec.profile, 0.0, 0.0, spec.r_outer)
    return FrustrationResult(value=2 * math.pi * value, minimizing_integer=0,
                             quadrature_error_estimate=2 * math.pi * error)


def frustration_punctured(spec: FrustrationSpec) -> FrustrationResult:
    """
    Frustration constant of an annulus or punctured disk: 2 pi min_m int |g(r) + m| dr.

    The objective is convex in real m, so the integer optimum lies in
    [-ceil(max g) - 1, -floor(min g) + 1]. Ties go to the smaller |m|, then
    to the larger m.

    Raises:
        exc.InvalidParams: If the region is simply connected.
    """
    if not spec.punctured_or_annular:
        raise exc.InvalidParams("The region is simply connected, use frustration_simply_connected")
    lo, hi = spec.r_inner, spec.r_outer
    g_min, g_max = spec.profile.extrema(lo, hi)
    candidates = sorted(range(-math.ceil(g_max) - 1, -math.floor(g_min) + 2), key=lambda m: (abs(m), -m))

    best_m, best_value, best_error = 0, math.inf, 0.0
    for m in candidates:
        value, error = absolute_integral(spec.profile, float(m), lo, hi)
        if math.isinf(best_value) or value < best_value - _TIE_TOL * max(1.0, best_value):
            best_m, best_value, best_error = m, value, error

    logger.debug("Frustration scan over %d shifts picked m=%d", len(candidates), best_m)
    return FrustrationResult(value=2 * math.pi * best_value, minimizing_integer=best_m,
                             quadrature_error_estimate=2 * math.pi * best_error)


def frustration(spec: FrustrationSpec) -> FrustrationResult:
    """Dispatches on the topology of the region."""
    if spec.punctured_or_annular:
        return frustration_punctured(spec)
    return frustration_simply_connected(spec)
