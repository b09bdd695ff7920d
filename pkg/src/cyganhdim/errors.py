"""Exception hierarchy shared by every module of the package."""


class CyganError(Exception):
    """Base class for all errors raised by :mod:`cyganhdim`."""


class DomainError(CyganError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularityError(DomainError):
    """Evaluation at (or numerically at) the pole of a reflection."""


class ConfigurationError(CyganError, ValueError):
    """A Schottky configuration is malformed or fails validation."""


class ResourceError(CyganError):
    """A requested computation exceeds the configured size cap."""


class StructuralError(CyganError):
    """A matrix lacks the structure an algorithm relies on."""


class ConvergenceError(CyganError, ArithmeticError):
    """An iterative method hit its iteration cap."""
