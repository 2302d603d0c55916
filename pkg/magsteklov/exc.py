"""
Custom exception definitions for the magsteklov toolkit.

This module provides specific error types to distinguish between
invalid inputs, numerical breakdowns of a solver path and truncation
problems of an assembled spectrum table.
"""
from typing import Any


class MagSteklovError(Exception):
    """Base class for all exceptions raised by magsteklov."""


class ConfigurationError(MagSteklovError, ValueError):
    """
    Raised when a run configuration cannot be used.

    Examples include an unknown output format, a t-range with a
    non-positive step or a config file that is not a flat JSON object.
    """


class InvalidParams(MagSteklovError, ValueError):
    """Raised when ODE or model parameters violate their invariants (e.g. c <= 0)."""


class IllDefinedAtOrigin(InvalidParams):
    """
    Raised when a simply connected frustration constant is requested for
    an angular profile that does not vanish at the origin.

    The potential g(r) dtheta only extends smoothly over the origin if g(0) = 0.
    """


class NumericalError(MagSteklovError):
    """
    Base class for failures of a numerical path.

    Attributes:
        context: Free-form details (parameters, orders, radii) of the failing call.
    """

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.context = context


class NonConvergence(NumericalError):
    """Raised when a series does not meet its tail criterion within the configured number of terms."""


class DegenerateNormalization(NumericalError):
    """
    Raised when Q(1) cannot be resolved from the series coefficients.

    The coefficient sum is tiny compared to the largest coefficient, so
    cancellation has eaten most significant digits (or Q vanishes at r = 1).
    """


class RiccatiPole(NumericalError):
    """Raised when the logarithmic derivative Q'/Q blows up inside (0, 1), i.e. Q has an interior zero."""


class StepLimitExceeded(NumericalError):
    """Raised when the oracle integrator exhausts its step budget."""


class SingularSolution(NumericalError):
    """Raised when the oracle trajectory has Q(1) ~ 0 relative to its own scale."""


class CancellationLoss(NumericalError):
    """
    Raised when the closed-form 4-ball quotient loses too many digits.

    Numerator and denominator both vanish as t -> 0, so the float
    evaluation is only trusted while |denominator| stays well above its
    largest summand times the configured ratio.
    """


class NegativeEigenvalue(NumericalError):
    """Raised when an eigenvalue that is nonnegative by construction comes out negative."""


class ThetaNonpositive(NumericalError):
    """Raised when the comparison density Theta(r) is <= 0 inside [0, R]."""


class QuadratureFailure(NumericalError):
    """Raised when an adaptive quadrature does not reach its requested accuracy."""


class TruncationInsufficient(NumericalError):
    """
    Raised when a spectrum table truncated at k_max cannot vouch for the
    requested number of sorted eigenvalues.
    """


class ModeError(MagSteklovError):
    """
    Raised while assembling a spectrum table, wrapping the numerical error
    of a single mode.

    Attributes:
        label: The ModeLabel of the failing mode.
        cause: The original NumericalError.
    """

    def __init__(self, label: Any, cause: NumericalError):
        super().__init__(f"Mode {label} failed: {cause}")
        self.label = label
        self.cause = cause
