"""Exception hierarchy."""


class DivaxError(Exception):
    """Base class for all errors raised by the package."""


class ValidationError(DivaxError, ValueError):
    """A vector is not a member of the requested simplex."""


class LengthTooSmall(ValidationError):
    pass


class NegativeEntry(ValidationError):
    pass


class NonPositiveEntry(ValidationError):
    pass


class SumNotOne(ValidationError):
    pass


class DomainError(DivaxError, ValueError):
    """Argument outside the domain of a real function."""


class DomainMismatch(DivaxError, ValueError):
    """Open-domain operation given closed-domain data, or vice versa."""


class UndefinedRatio(DivaxError, ZeroDivisionError):
    """A positive number divided by zero; no convention covers it."""


class ConfigInfeasible(DivaxError, RuntimeError):
    """The sampler could not satisfy its constraints within the draw cap."""


class IncomparableInfinity(DivaxError, ArithmeticError):
    """Both sides of an identity evaluated to +inf."""


class ParseError(DivaxError, ValueError):
    """Malformed input record."""
