"""Exception types shared across the package."""


class GenliError(Exception):
    """Base class for all package errors."""


class DomainError(GenliError, ValueError):
    """An argument lies outside the region where an operation is defined."""


class PoleError(DomainError):
    """Evaluation requested at a pole of the function."""


class CapacityError(GenliError, OverflowError):
    """A size limit of an operation or data structure was exceeded."""


class NonConvergenceError(GenliError, ArithmeticError):
    """A limit, series or quadrature failed to settle."""


class ToleranceError(GenliError):
    """The requested tolerance cannot be reached with the supplied data."""


class ZeroTableError(GenliError, ValueError):
    """A zero ordinate file is malformed or out of order."""


class CacheCorruptionError(GenliError):
    """A cached Mangoldt table failed an integrity check."""


class WindingError(GenliError, ArithmeticError):
    """The phase of a function failed to return after one turn of a contour."""


class RadiusError(DomainError):
    """A contour radius does not clear the nearest zero by the required margin."""
