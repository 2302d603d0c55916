"""
Frustration constants and magnetic Cheeger quotients of rotationally
symmetric potentials on the unit disk.
"""

from .cheeger import cheeger_quotients, domain_frustration, family_minima, jammes_diagnostic, jammes_family
from .frustration import absolute_integral, frustration, frustration_punctured, frustration_simply_connected

__all__ = [
    'absolute_integral',
    'cheeger_quotients',
    'domain_frustration',
    'family_minima',
    'frustration',
    'frustration_punctured',
    'frustration_simply_connected',
    'jammes_diagnostic',
    'jammes_family',
]
