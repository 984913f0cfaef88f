"""Exception types shared across the package."""


class RapidityError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RapidityError, ValueError):
    """A well-formed value lies outside the domain of an operation."""


class InvalidInput(RapidityError, ValueError):
    """Malformed input: NaN, infinity, or a parameter with the wrong sign."""


class EmptyInput(RapidityError, ValueError):
    pass


class ConvergenceError(RapidityError, ArithmeticError):
    """An iterative routine exhausted its budget before reaching tolerance."""
