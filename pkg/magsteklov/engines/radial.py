"""
Radial engine for the magnetic Steklov problem.

Solves the singular ODE family Q'' + (c/r) Q' - (a + b r^2) Q = 0 for the
solution regular at the origin, either by the even-power Frobenius series

    4j (j + (c-1)/2) c_j = a c_{j-1} + b c_{j-2},   c_0 = 1, c_{-1} = 0,

or by integrating the logarithmic derivative u = Q'/Q, which satisfies the
Riccati equation u' = a + b r^2 - (c/r) u - u^2. In both cases the Steklov
eigenvalue of the mode is sigma = Q'(1)/Q(1) + k_power.
"""

import logging
import math
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike
from scipy.integrate import solve_ivp

from magsteklov import exc
from magsteklov.models import RadialODEParams, RadialProfile, RiccatiConfig, SeriesConfig

logger = logging.getLogger(__name__)

Extension = Callable[[ArrayLike], np.ndarray]


def series_solve(
    params: RadialODEParams,
    t_scale_hint: Optional[float] = None,
    config: SeriesConfig = SeriesConfig(),
) -> RadialProfile:
    """
    Runs the Frobenius recursion until the tail criterion holds.

    Args:
        params: The ODE coefficients.
        t_scale_hint: Expected field strength; only used to size the
            coefficient buffer up front.
        config: Series tolerances and limits.

    Returns:
        The normalized profile (Q(1) = 1).

    Raises:
        exc.InvalidParams: If c <= 0.
        exc.NonConvergence: If the tail is not reached within config.max_terms.
        exc.DegenerateNormalization: If the coefficient sum is lost to cancellation.

    >>> profile = series_solve(RadialODEParams(c=7, a=0, b=0, k_power=3))
    >>> profile.coeffs, profile.truncation_order
    ((1.0,), 0)
    """
    params.require_valid()
    a, b, half = params.a, params.b, params.half_order

    if a == 0 and b == 0:
        return RadialProfile(params=params, coeffs=(1.0,), scale_log=0.0, truncation_order=0)

    size = 64 + 4 * int(abs(t_scale_hint)) if t_scale_hint is not None else 256
    coeffs = np.zeros(min(size, config.max_terms + 1))
    coeffs[0] = 1.0
    prev2, prev1 = 0.0, 1.0
    largest = 1.0
    rescales = 0
    tail_start = math.ceil(math.sqrt((abs(a) + b) / 4.0))

    j = 1
    while True:
        if j > config.max_terms:
            raise exc.NonConvergence(
                f"Series did not reach its tail within {config.max_terms} terms",
                c=params.c, a=a, b=b)
        if j >= coeffs.size:
            coeffs = np.concatenate([coeffs, np.zeros(coeffs.size)])

        current = (a * prev1 + b * prev2) / (4.0 * j * (j + half))
        coeffs[j] = current
        largest = max(largest, abs(current))

        if largest > config.rescale_threshold:
            coeffs[:j + 1] /= largest
            prev1 /= largest
            current /= largest
            largest = 1.0
            rescales += 1

        if (j >= tail_start and
                abs(current) <= config.tail_tol * largest and
                abs(prev1) <= config.tail_tol * largest):
            break
        prev2, prev1 = prev1, current
        j += 1

    coeffs = coeffs[:j + 1]
    largest = float(np.max(np.abs(coeffs)))
    total = math.fsum(coeffs)
    if abs(total) < config.min_normalization_ratio * largest:
        raise exc.DegenerateNormalization(
            f"Q(1) is lost to cancellation (|sum| / max = {abs(total) / largest:.3e})",
            c=params.c, a=a, b=b)

    stored = coeffs * (math.copysign(1.0, total) / largest)
    scale_log = -math.log(math.fsum(stored))
    logger.debug("Series for c=%s a=%s b=%s truncated at J=%d after %d rescales",
                 params.c, a, b, j, rescales)
    return RadialProfile(
        params=params,
        coeffs=tuple(float(x) for x in stored),
        scale_log=scale_log,
        truncation_order=j,
    )


def steklov_value(profile: RadialProfile, config: SeriesConfig = SeriesConfig()) -> float:
    """
    Returns k_power + Q'(1)/Q(1) = k_power + sum 2j c_j / sum c_j.

    Only ratios of stored coefficients enter, so scale_log is not needed.

    >>> steklov_value(series_solve(RadialODEParams(c=5, a=0, b=0, k_power=2)))
    2.0
    """
    coeffs = np.asarray(profile.coeffs)
    total = math.fsum(coeffs)
    largest = float(np.max(np.abs(coeffs)))
    if abs(total) < config.min_normalization_ratio * largest:
        raise exc.DegenerateNormalization("Q(1) vanishes relative to the series scale",
                                          c=profile.params.c, a=profile.params.a, b=profile.params.b)
    orders = 2.0 * np.arange(coeffs.size)
    return profile.params.k_power + math.fsum(orders * coeffs) / total


def evaluate_profile(profile: RadialProfile, r: ArrayLike) -> np.ndarray:
    """
    Returns Q(r) r^k_power with Q(1) = 1, by Horner evaluation in r^2.

    Accepts scalars and arrays; the result has the shape of r.

    >>> float(evaluate_profile(series_solve(RadialODEParams(c=5, a=0, b=0, k_power=2)), 0.5))
    0.25
    """
    rho = np.asarray(r, dtype=float) ** 2
    acc = np.zeros_like(rho)
    for coefficient in reversed(profile.coeffs):
        acc = acc * rho + coefficient
    return acc * math.exp(profile.scale_log) * np.sqrt(rho) ** profile.params.k_power


# --- Logarithmic derivative (Riccati) path ---

def seed_radius(params: RadialODEParams, config: RiccatiConfig = RiccatiConfig()) -> float:
    """
    Radius at which the series seed of u is started.

    The ratio of the first two series terms there is at most config.seed_ratio,
    and later ratios are smaller still.
    """
    scale = abs(params.a) + params.b
    if scale == 0:
        return config.max_seed_radius
    return min(config.max_seed_radius, math.sqrt(config.seed_ratio * 2 * (params.c + 1) / scale))


def _seed_series(c: np.ndarray, a: np.ndarray, b: np.ndarray, r: float, terms: int) -> tuple[np.ndarray, np.ndarray]:
    """Partial sums (S, S') of the regular series at radius r, vectorized over modes."""
    half = (c - 1.0) / 2.0
    rho = r * r
    prev2 = np.zeros_like(c)
    prev1 = np.ones_like(c)
    value = np.ones_like(c)
    slope = np.zeros_like(c)
    power = 1.0
    for j in range(1, terms):
        current = (a * prev1 + b * prev2) / (4.0 * j * (j + half))
        power *= rho
        value = value + current * power
        slope = slope + 2 * j * current * power / r
        prev2, prev1 = prev1, current
    return value, slope


def _riccati_rhs(c: np.ndarray, a: np.ndarray, b: np.ndarray) -> Callable[[float, np.ndarray], np.ndarray]:
    def rhs(r: float, u: np.ndarray) -> np.ndarray:
        return a + b * r * r - (c / r) * u - u * u
    return rhs


def _pole_event(bound: float) -> Callable[[float, np.ndarray], float]:
    def event(_r: float, u: np.ndarray) -> float:
        return bound - float(np.max(np.abs(u)))
    event.terminal = True  # type: ignore[attr-defined]
    return event


def log_derivative_solve_batch(
    modes: Sequence[RadialODEParams],
    config: RiccatiConfig = RiccatiConfig(),
) -> list[float]:
    """
    Integrates u = Q'/Q of many modes as one vector ODE from a common seed radius.

    Returns:
        u(1) + k_power for every mode, in input order.

    Raises:
        exc.RiccatiPole: If any component exceeds config.pole_bound before r = 1.
    """
    if not modes:
        return []
    for params in modes:
        params.require_valid()

    c = np.array([p.c for p in modes], dtype=float)
    a = np.array([p.a for p in modes], dtype=float)
    b = np.array([p.b for p in modes], dtype=float)
    start = min(seed_radius(p, config) for p in modes)
    value, slope = _seed_series(c, a, b, start, config.seed_terms)
    logger.debug("Riccati batch of %d modes seeded at r=%.3e", len(modes), start)

    solution = solve_ivp(
        _riccati_rhs(c, a, b), (start, 1.0), slope / value,
        method=config.method, rtol=config.rel_tol, atol=config.abs_tol,
        events=_pole_event(config.pole_bound),
    )
    if solution.status == 1:
        radius = float(solution.t_events[0][0])
        raise exc.RiccatiPole(f"Logarithmic derivative blew up at r={radius:.6f}", radius=radius)
    if not solution.success:
        raise exc.NumericalError(f"Riccati integration failed: {solution.message}")

    u_end = solution.y[:, -1]
    return [float(u) + p.k_power for u, p in zip(u_end, modes)]


def log_derivative_solve(params: RadialODEParams, config: RiccatiConfig = RiccatiConfig()) -> float:
    """
    Returns u(1) + k_power, which equals the series Steklov value of the mode.

    >>> log_derivative_solve(RadialODEParams(c=9, a=0, b=0, k_power=4))
    4.0
    """
    return log_derivative_solve_batch([params], config)[0]


def log_derivative_extension(params: RadialODEParams, config: RiccatiConfig = RiccatiConfig()) -> Extension:
    """
    Returns r -> Q(r) r^k_power with Q(1) = 1 via the Riccati path.

    Integrates (u, w) with w' = u, so that Q(r)/Q(1) = exp(w(r) - w(1)); below
    the seed radius the seed series itself is used.
    """
    params.require_valid()
    start = seed_radius(params, config)
    c, a, b = (np.array([x], dtype=float) for x in (params.c, params.a, params.b))
    value, slope = _seed_series(c, a, b, start, config.seed_terms)
    riccati = _riccati_rhs(c, a, b)

    def rhs(r: float, y: np.ndarray) -> np.ndarray:
        return np.array([riccati(r, y[:1])[0], y[0]])

    solution = solve_ivp(
        rhs, (start, 1.0), [slope[0] / value[0], 0.0],
        method=config.method, rtol=config.rel_tol, atol=config.abs_tol,
        dense_output=True, events=_pole_event(config.pole_bound),
    )
    if solution.status == 1:
        raise exc.RiccatiPole("Logarithmic derivative blew up inside (0, 1)")
    if not solution.success:
        raise exc.NumericalError(f"Riccati integration failed: {solution.message}")

    dense = solution.sol
    w_end = float(solution.y[1, -1])
    seed_at_start = float(value[0])

    def extension(r: ArrayLike) -> np.ndarray:
        radii = np.asarray(r, dtype=float)
        flat = np.atleast_1d(radii).ravel()
        inner = flat < start
        q = np.empty_like(flat)
        if np.any(~inner):
            q[~inner] = np.exp(dense(flat[~inner])[1] - w_end)
        if np.any(inner):
            partial = _seed_partial(params, flat[inner], config.seed_terms)
            q[inner] = partial / seed_at_start * math.exp(-w_end)
        return (q * flat ** params.k_power).reshape(radii.shape)

    return extension


def _seed_partial(params: RadialODEParams, r: np.ndarray, terms: int) -> np.ndarray:
    """Seed partial sum S(r) at several radii of a single mode."""
    half = params.half_order
    rho = r * r
    prev2, prev1 = 0.0, 1.0
    total = np.ones_like(r)
    power = np.ones_like(r)
    for j in range(1, terms):
        current = (params.a * prev1 + params.b * prev2) / (4.0 * j * (j + half))
        power = power * rho
        total = total + current * power
        prev2, prev1 = prev1, current
    return total


def series_extension(params: RadialODEParams, config: SeriesConfig = SeriesConfig()) -> Extension:
    """Returns r -> Q(r) r^k_power with Q(1) = 1 via the series path."""
    profile = series_solve(params, config=config)
    return lambda r: evaluate_profile(profile, r)
