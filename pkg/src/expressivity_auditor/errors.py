"""Exception types shared across the package."""


class ExpressivityError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(ExpressivityError):
    """A network failed structural validation."""


class UnsupportedActivationError(ExpressivityError):
    """An operation needed piecewise-linear structure the activation lacks."""


class PreconditionError(ExpressivityError):
    """A documented precondition of an audit did not hold on the given data."""
