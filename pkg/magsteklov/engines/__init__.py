"""
Radial ODE engines.

This package contains the series and Riccati solvers of the radial ODE
(`radial`), the independent Runge-Kutta oracle (`oracle`) and the
ModeSolver interface through which the spectrum builders use them.
"""

from .oracle import oracle_steklov_value
from .radial import (
    evaluate_profile,
    log_derivative_extension,
    log_derivative_solve,
    log_derivative_solve_batch,
    series_extension,
    series_solve,
    steklov_value,
)
from .solver import ModeSolver, OracleModeSolver, StandardModeSolver

__all__ = [
    'ModeSolver',
    'OracleModeSolver',
    'StandardModeSolver',
    'evaluate_profile',
    'log_derivative_extension',
    'log_derivative_solve',
    'log_derivative_solve_batch',
    'oracle_steklov_value',
    'series_extension',
    'series_solve',
    'steklov_value',
]
