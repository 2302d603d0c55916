"""
First Dirichlet eigenvalue of the unit disk.

The eigenvalue is j_{0,1}^2, the square of the first zero of J0. The zero
is found by bisection on the power series of J0; a radial shoot of the
Bessel equation gives an independent cross-check.
"""

import logging
import math

from scipy.integrate import solve_ivp
from scipy.optimize import bisect, brentq

logger = logging.getLogger(__name__)


def bessel_j0_series(x: float) -> float:
    """
    J0(x) = sum_m (-1)^m (x/2)^{2m} / (m!)^2, summed until the terms vanish.

    >>> bessel_j0_series(0.0)
    1.0
    """
    quarter = (x / 2.0) ** 2
    term, total, m = 1.0, 1.0, 0
    while True:
        m += 1
        term *= -quarter / (m * m)
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)):
            return total


def first_bessel_zero(xtol: float = 1e-14) -> float:
    """
    The first positive zero j_{0,1} of J0, bracketed in [2, 3].

    >>> abs(first_bessel_zero() - 2.404825557695773) < 1e-12
    True
    """
    return float(bisect(bessel_j0_series, 2.0, 3.0, xtol=xtol, maxiter=200))


def dirichlet_disk_eigenvalue() -> float:
    """lambda_1 of the Dirichlet Laplacian on the unit disk, j_{0,1}^2."""
    return first_bessel_zero() ** 2


def dirichlet_disk_eigenvalue_shoot(seed_radius: float = 1e-4, rel_tol: float = 1e-12) -> float:
    """
    lambda_1 by shooting phi'' + phi'/r + lambda phi = 0, phi(0) = 1, on lambda
    until phi(1) = 0.
    """
    def endpoint(lam: float) -> float:
        r0 = seed_radius
        start = [1 - lam * r0 ** 2 / 4 + lam ** 2 * r0 ** 4 / 64, -lam * r0 / 2 + lam ** 2 * r0 ** 3 / 16]
        solution = solve_ivp(lambda r, y: [y[1], -y[1] / r - lam * y[0]], (r0, 1.0), start,
                             method="DOP853", rtol=rel_tol, atol=1e-14)
        return float(solution.y[0, -1])

    eigenvalue = float(brentq(endpoint, 4.0, 8.0, xtol=1e-13))
    logger.debug("Radial Bessel shoot gave lambda_1=%.15g (j01=%.15g)", eigenvalue, math.sqrt(eigenvalue))
    return eigenvalue
