"""
Independent Runge-Kutta oracle for the radial ODE.

Integrates the first-order system (Q, Q') from a small seed radius to r = 1
with an embedded-pair adaptive stepper. The seed values come from a short,
hand-rolled local series at the regular singular point r = 0; nothing else is
shared with the series machinery of the radial engine.
"""

import logging

import numpy as np
from scipy.integrate import DOP853, RK45, OdeSolver

from magsteklov import exc
from magsteklov.models import OracleConfig, RadialODEParams

logger = logging.getLogger(__name__)

_STEPPERS: dict[str, type[OdeSolver]] = {
    "DOP853": DOP853,
    "RK45": RK45,
}


def _seed(params: RadialODEParams, radius: float, order: int) -> tuple[float, float]:
    """(Q, Q') at the seed radius from the first `order` series terms, with Q(0) = 1."""
    value, slope = 1.0, 0.0
    before, last = 0.0, 1.0
    for j in range(1, order):
        term = (params.a * last + params.b * before) / (4.0 * j * (j + (params.c - 1.0) / 2.0))
        value += term * radius ** (2 * j)
        slope += 2 * j * term * radius ** (2 * j - 1)
        before, last = last, term
    return value, slope


def oracle_steklov_value(params: RadialODEParams, config: OracleConfig = OracleConfig()) -> float:
    """
    Returns k_power + Q'(1)/Q(1) by adaptive Runge-Kutta integration.

    Raises:
        exc.InvalidParams: If c <= 0.
        exc.StepLimitExceeded: If more than config.max_steps steps are needed.
        exc.SingularSolution: If Q(1) is negligible against the trajectory scale.

    >>> round(oracle_steklov_value(RadialODEParams(c=11, a=0, b=0, k_power=5)), 9)
    5.0
    """
    params.require_valid()
    c, a, b = params.c, params.a, params.b

    def rhs(r: float, y: np.ndarray) -> np.ndarray:
        return np.array([y[1], (a + b * r * r) * y[0] - (c / r) * y[1]])

    stepper = _STEPPERS[config.method](
        rhs, config.seed_radius, np.array(_seed(params, config.seed_radius, config.seed_order)), 1.0,
        rtol=config.rel_tol, atol=config.abs_tol,
    )

    steps = 0
    scale = abs(stepper.y[0])
    while stepper.status == "running":
        if steps >= config.max_steps:
            raise exc.StepLimitExceeded(f"Oracle exceeded {config.max_steps} steps at r={stepper.t:.6f}",
                                        radius=stepper.t)
        message = stepper.step()
        if stepper.status == "failed":
            raise exc.NumericalError(f"Oracle integration failed: {message}")
        scale = max(scale, abs(stepper.y[0]))
        steps += 1

    q_end, dq_end = stepper.y
    if abs(q_end) <= 1e-12 * scale:
        raise exc.SingularSolution("Q(1) vanishes relative to the trajectory", q_end=q_end, scale=scale)
    logger.debug("Oracle for c=%s a=%s b=%s finished in %d steps", c, a, b, steps)
    return params.k_power + dq_end / q_end
