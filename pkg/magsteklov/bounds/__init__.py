"""
Bound checks: maximum principle, subharmonic L2 estimate, upper and lower
eigenvalue bounds, gauge periodicity, large-field asymptotics and the
Steklov versus boundary-Laplacian comparison.
"""

from .bessel import bessel_j0_series, dirichlet_disk_eigenvalue, dirichlet_disk_eigenvalue_shoot, first_bessel_zero
from .checks import (
    asymptotic_check,
    asymptotic_prediction,
    check_theta_positive,
    comparison_report,
    gauge_periodicity_check,
    max_principle_check,
    monotonicity_check,
    neumann_cheeger_diagnostic,
    reilly_flat_disk,
    reilly_lower_bound,
    subharmonic_l2_check,
    theta_integral,
    upper_bound_disk,
)

__all__ = [
    'asymptotic_check',
    'asymptotic_prediction',
    'bessel_j0_series',
    'check_theta_positive',
    'comparison_report',
    'dirichlet_disk_eigenvalue',
    'dirichlet_disk_eigenvalue_shoot',
    'first_bessel_zero',
    'gauge_periodicity_check',
    'max_principle_check',
    'monotonicity_check',
    'neumann_cheeger_diagnostic',
    'reilly_flat_disk',
    'reilly_lower_bound',
    'subharmonic_l2_check',
    'theta_integral',
    'upper_bound_disk',
]
