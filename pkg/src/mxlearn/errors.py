"""Exception types raised across the package."""


class MxlError(Exception):
    """Base class for all package errors."""


class InvalidInput(MxlError):
    """Matrix or scalar argument violates a basic precondition (NaN/Inf, bad dim)."""


class InvalidConfig(MxlError):
    """Configuration value is out of range or inconsistent."""


class DimensionMismatch(MxlError):
    """Operands have incompatible shapes."""


class NotPositiveDefinite(MxlError):
    """Matrix required to be positive definite is not."""


class QueryRadiusTooLarge(MxlError):
    """Perturbation radius exceeds the feasibility radius of the spectrahedron."""


class PolicyInfeasible(MxlError):
    """Step policy violates the basic feasibility condition on the query radius."""


class InvalidUpdateLaw(MxlError):
    """Update law gives some user zero marginal activation probability."""


class ParseError(MxlError):
    """Config file is malformed (unknown key, duplicate key, bad syntax)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InsufficientData(MxlError):
    """Not enough points to carry out a fit."""
