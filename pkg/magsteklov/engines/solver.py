"""
Mode solvers for the radial ODE.

A ModeSolver turns RadialODEParams into Steklov values and normalized
extensions. The spectrum builders only depend on this interface, so the
numerical path (series, Riccati or the oracle) can be swapped per table.
"""

import logging
from abc import ABC, abstractmethod
from typing import Sequence

from magsteklov import exc
from magsteklov.models import OracleConfig, RadialODEParams, SolverPolicy

from . import oracle, radial
from .radial import Extension

logger = logging.getLogger(__name__)


class ModeSolver(ABC):
    """
    Abstract interface for solving single radial modes.

    Implementations must be pure: equal parameters give equal results, so a
    solver instance can be shared between tables and threads.
    """

    @abstractmethod
    def steklov_value(self, params: RadialODEParams) -> float:
        """Returns Q'(1)/Q(1) + k_power of the regular solution."""
        raise NotImplementedError()

    def steklov_values(self, modes: Sequence[RadialODEParams]) -> list[float]:
        """
        Returns the Steklov values of many modes, in input order.

        The default solves mode by mode; subclasses may batch.
        """
        return [self.steklov_value(params) for params in modes]

    @abstractmethod
    def extension(self, params: RadialODEParams) -> Extension:
        """Returns r -> Q(r) r^k_power normalized to 1 at r = 1."""
        raise NotImplementedError()


class StandardModeSolver(ModeSolver):
    """
    The default solver.

    Uses the scaled series while b <= policy.riccati_threshold_b and the
    Riccati path above it. Each path falls back to the other one when it
    reports its own breakdown (DegenerateNormalization for the series,
    RiccatiPole for the Riccati path).
    """

    def __init__(self, policy: SolverPolicy = SolverPolicy()):
        self._policy = policy

    @property
    def policy(self) -> SolverPolicy:
        """The path selection policy."""
        return self._policy

    def _prefers_riccati(self, params: RadialODEParams) -> bool:
        return params.b > self._policy.riccati_threshold_b

    def _series_value(self, params: RadialODEParams) -> float:
        try:
            profile = radial.series_solve(params, config=self._policy.series)
            return radial.steklov_value(profile, self._policy.series)
        except exc.DegenerateNormalization:
            logger.warning("Series normalization lost for c=%s a=%s b=%s, using the Riccati path",
                           params.c, params.a, params.b)
            return radial.log_derivative_solve(params, self._policy.riccati)

    def _riccati_value(self, params: RadialODEParams) -> float:
        try:
            return radial.log_derivative_solve(params, self._policy.riccati)
        except exc.RiccatiPole:
            logger.warning("Riccati pole for c=%s a=%s b=%s, using the scaled series",
                           params.c, params.a, params.b)
            profile = radial.series_solve(params, config=self._policy.series)
            return radial.steklov_value(profile, self._policy.series)

    def steklov_value(self, params: RadialODEParams) -> float:
        if self._prefers_riccati(params):
            return self._riccati_value(params)
        return self._series_value(params)

    def steklov_values(self, modes: Sequence[RadialODEParams]) -> list[float]:
        results: dict[int, float] = {}
        batch = [i for i, params in enumerate(modes) if self._prefers_riccati(params)]
        queued = set(batch)

        for i, params in enumerate(modes):
            if i not in queued:
                results[i] = self._series_value(params)

        if batch:
            try:
                values = radial.log_derivative_solve_batch([modes[i] for i in batch], self._policy.riccati)
                results.update(zip(batch, values))
            except exc.RiccatiPole:
                logger.warning("Riccati batch of %d modes hit a pole, solving mode by mode", len(batch))
                for i in batch:
                    results[i] = self._riccati_value(modes[i])

        return [results[i] for i in range(len(modes))]

    def extension(self, params: RadialODEParams) -> Extension:
        if not self._prefers_riccati(params):
            try:
                return radial.series_extension(params, self._policy.series)
            except exc.DegenerateNormalization:
                logger.warning("Series normalization lost for c=%s a=%s b=%s, using the Riccati extension",
                               params.c, params.a, params.b)
        return radial.log_derivative_extension(params, self._policy.riccati)


class OracleModeSolver(ModeSolver):
    """Solves every mode with the Runge-Kutta oracle. Used to certify the other paths."""

    def __init__(self, config: OracleConfig = OracleConfig()):
        self._config = config

    def steklov_value(self, params: RadialODEParams) -> float:
        return oracle.oracle_steklov_value(params, self._config)

    def extension(self, params: RadialODEParams) -> Extension:
        raise NotImplementedError("The oracle does not provide extensions")
