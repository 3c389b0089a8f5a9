# adoptlab/exceptions.py

"""
Custom exception classes for the adoptlab package.
"""

from typing import List, Optional


class AdoptLabError(Exception):
    """Base exception for adoptlab errors."""
    pass

class ConfigurationError(AdoptLabError):
    """Exception raised for configuration-related issues."""
    pass

class AssumptionViolationError(ConfigurationError):
    """Raised when parameters break the cost and benefit ordering."""

    def __init__(self, message: str, violations: Optional[List[str]] = None) -> None:
        super().__init__(message)
        self.violations: List[str] = list(violations or [])

class SchedulingError(ConfigurationError):
    """Exception raised for conflicting intervention windows."""
    pass

class RegistrationError(AdoptLabError):
    """Exception raised during command registration."""
    pass

class NumericalError(AdoptLabError):
    """Base exception for failures of a numerical procedure."""
    pass

class NonFiniteStateError(NumericalError):
    """Raised when the integrated state stops being finite (step size too large)."""

    def __init__(self, message: str, step: int, t: float) -> None:
        super().__init__(message)
        self.step = step
        self.t = t

class NoRootError(NumericalError):
    """Raised when the tipping-point equation has no sign change on (0, 1)."""

    def __init__(self, message: str, side: str) -> None:
        super().__init__(message)
        self.side = side

class NoCrossingError(NumericalError):
    """Raised when no excursion length flips the basin."""
    pass

class AtBoundaryError(NumericalError):
    """Raised when a derivative is requested at a clamped solution."""
    pass

class PropertyViolationError(NumericalError):
    """Raised when a computed quantity contradicts an analytic sign or ordering."""
    pass
