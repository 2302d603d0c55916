"""
Closed forms of the 4-ball Steklov problem for the Hopf potential.

The mode u^p1 v^p2 (k = p1 + p2) has the eigenvalue

    sigma(p1, p2, t) = (F(p1, p2, t) - F(p2, p1, -t)) / (G(p1, p2, t) - G(p2, p1, -t))

with the exponentially weighted factorial sums

    F(p1, p2, t) = e^{t/2} sum_{j<=p1} (2j - k + t - 2) (k - j)! C(p1, j) (-t)^j
    G(p1, p2, t) = e^{t/2} sum_{j<=p1} (k - j)! C(p1, j) (-t)^j

and the radial factor Q(r) is proportional to
(G(p1, p2, t r^2) - G(p2, p1, -t r^2)) / r^{2k+2}.

Numerator and denominator both vanish to order t^{k+1} as t -> 0, so the
float quotient is only trusted while the denominator keeps enough digits;
otherwise the quotient is re-evaluated with mpmath at a working precision
raised by the number of digits lost.
"""

import logging
import math
from fractions import Fraction
from typing import Any, Callable

import mpmath
import numpy as np
from numpy.typing import ArrayLike

from magsteklov import exc
from magsteklov.engines import radial
from magsteklov.models import Ball4Config, RadialODEParams

logger = logging.getLogger(__name__)

# digits carried by a double
_FLOAT_DIGITS = 15


def _numerator_terms(p1: int, p2: int, s: Any) -> list[Any]:
    """Summands of F(p1, p2, s) without the exponential weight."""
    k = p1 + p2
    return [(2 * j - k + s - 2) * math.factorial(k - j) * math.comb(p1, j) * (-s) ** j for j in range(p1 + 1)]


def _denominator_terms(p1: int, p2: int, s: Any) -> list[Any]:
    """Summands of G(p1, p2, s) without the exponential weight."""
    k = p1 + p2
    return [math.factorial(k - j) * math.comb(p1, j) * (-s) ** j for j in range(p1 + 1)]


def _difference_terms(
    terms: Callable[[int, int, Any], list[Any]], p1: int, p2: int, t: Any, exp: Callable[[Any], Any]
) -> list[Any]:
    """Summands of X(p1, p2, t) - X(p2, p1, -t) including the exponential weights."""
    plus, minus = exp(t / 2), exp(-t / 2)
    return [plus * x for x in terms(p1, p2, t)] + [-minus * x for x in terms(p2, p1, -t)]


def ball4_hopf_factors(p1: int, p2: int, t: float) -> tuple[float, float]:
    """
    Returns (F(p1, p2, t), G(p1, p2, t)).

    >>> ball4_hopf_factors(0, 0, 0.0)
    (-2.0, 1.0)
    """
    weight = math.exp(t / 2)
    return weight * math.fsum(_numerator_terms(p1, p2, t)), weight * math.fsum(_denominator_terms(p1, p2, t))


def ball4_hopf_quotient(p1: int, p2: int, t: float, config: Ball4Config = Ball4Config()) -> float:
    """
    Evaluates the F/G quotient in double precision.

    Raises:
        exc.CancellationLoss: If |denominator| < config.cancellation_ratio times
            its largest summand, or if a summand overflows.
    """
    try:
        den_terms = _difference_terms(_denominator_terms, p1, p2, t, math.exp)
        num_terms = _difference_terms(_numerator_terms, p1, p2, t, math.exp)
    except OverflowError as error:
        raise exc.CancellationLoss("F/G summands overflow in double precision", p1=p1, p2=p2, t=t) from error
    if not all(math.isfinite(x) for x in den_terms + num_terms):
        raise exc.CancellationLoss("F/G summands overflow in double precision", p1=p1, p2=p2, t=t)

    den = math.fsum(den_terms)
    largest = max(abs(x) for x in den_terms)
    if abs(den) < config.cancellation_ratio * largest:
        raise exc.CancellationLoss(
            f"F/G denominator cancelled to {abs(den) / largest:.2e} of its largest summand",
            p1=p1, p2=p2, t=t)
    return math.fsum(num_terms) / den


def _lost_digits(total: Any, terms: list[Any]) -> float:
    largest = max(abs(x) for x in terms)
    if total == 0:
        return math.inf
    return max(0.0, float(mpmath.log10(largest / abs(total))))


def ball4_extended_quotient(p1: int, p2: int, t: float, config: Ball4Config = Ball4Config()) -> float:
    """Evaluates the F/G quotient with mpmath, raising the precision until the denominator is resolved."""
    if t == 0:
        raise exc.InvalidParams("The F/G quotient is 0/0 at t = 0")
    digits = _FLOAT_DIGITS + config.guard_digits
    while True:
        with mpmath.workdps(digits):
            s = mpmath.mpf(t)
            den_terms = _difference_terms(_denominator_terms, p1, p2, s, mpmath.exp)
            den = mpmath.fsum(den_terms)
            lost = _lost_digits(den, den_terms)
            if lost + _FLOAT_DIGITS + config.guard_digits // 2 <= digits:
                num = mpmath.fsum(_difference_terms(_numerator_terms, p1, p2, s, mpmath.exp))
                logger.debug("F/G for (%d, %d) at t=%s resolved with %d digits", p1, p2, t, digits)
                return float(num / den)
        if math.isinf(lost) or digits > 10_000:
            raise exc.CancellationLoss("F/G denominator vanishes at any working precision", p1=p1, p2=p2, t=t)
        digits = int(math.ceil(lost)) + _FLOAT_DIGITS + config.guard_digits


def _series_coefficient(p1: int, p2: int, n: int) -> Fraction:
    """Exact coefficient of s^n in G(p1, p2, s) - G(p2, p1, -s)."""
    def weighted(q1: int, q2: int, sign: int) -> Fraction:
        # e^{sign s/2} sum_j (k-j)! C(q1, j) (-sign s)^j
        k = q1 + q2
        total = Fraction(0)
        for j in range(min(q1, n) + 1):
            poly = Fraction(math.factorial(k - j) * math.comb(q1, j) * (-sign) ** j)
            total += poly * Fraction(sign, 2) ** (n - j) / math.factorial(n - j)
        return total
    return weighted(p1, p2, 1) - weighted(p2, p1, -1)


def ball4_profile(p1: int, p2: int, t: float, r: ArrayLike) -> np.ndarray:
    """
    Closed-form radial factor Q(r) of the 4-ball mode, normalized to Q(1) = 1.

    Accepts scalars and arrays of radii in [0, 1].

    >>> float(ball4_profile(0, 0, 0.0, 0.3))
    1.0
    """
    radii = np.asarray(r, dtype=float)
    if t == 0:
        return np.ones_like(radii)
    k = p1 + p2
    order = k + 1

    def hopf_difference(s: Any) -> Any:
        terms = _difference_terms(_denominator_terms, p1, p2, s, mpmath.exp)
        return mpmath.fsum(terms), terms

    def at(radius: float) -> float:
        digits = _FLOAT_DIGITS + 20
        while True:
            with mpmath.workdps(digits):
                s_one = mpmath.mpf(t)
                boundary, boundary_terms = hopf_difference(s_one)
                if radius == 0:
                    coefficient = _series_coefficient(p1, p2, order)
                    inner = mpmath.mpf(coefficient.numerator) / coefficient.denominator * s_one ** order
                    lost = _lost_digits(boundary, boundary_terms)
                else:
                    s_r = s_one * mpmath.mpf(radius) ** 2
                    value, terms = hopf_difference(s_r)
                    inner = value / mpmath.mpf(radius) ** (2 * order)
                    lost = max(_lost_digits(value, terms), _lost_digits(boundary, boundary_terms))
                if lost + _FLOAT_DIGITS + 10 <= digits:
                    return float(inner / boundary)
            if math.isinf(lost) or digits > 10_000:
                raise exc.CancellationLoss("Closed-form profile cannot be resolved", p1=p1, p2=p2, t=t, r=radius)
            digits = int(math.ceil(lost)) + _FLOAT_DIGITS + 20

    flat = [at(float(x)) for x in np.atleast_1d(radii).ravel()]
    return np.asarray(flat).reshape(radii.shape)


def ball4_steklov_value(p1: int, p2: int, t: float, config: Ball4Config = Ball4Config()) -> float:
    """
    Steklov eigenvalue of the 4-ball mode (p1, p2).

    Below config.small_t the closed form is replaced by the radial series of
    the same mode; cancelling quotients are handed to the extended-precision path.

    >>> abs(ball4_steklov_value(0, 0, 2.0) - (2 / math.tanh(1) - 2)) < 1e-12
    True
    """
    if abs(t) < config.small_t:
        return radial.steklov_value(radial.series_solve(RadialODEParams.ball4(p1, p2, t)))
    try:
        return ball4_hopf_quotient(p1, p2, t, config)
    except exc.CancellationLoss:
        logger.debug("F/G for (%d, %d) at t=%s cancelled, using extended precision", p1, p2, t)
        return ball4_extended_quotient(p1, p2, t, config)
