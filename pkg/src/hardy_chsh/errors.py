"""Exception types raised by the library."""


class HardyError(Exception):
    """Base class for all errors raised by ``hardy_chsh``."""


class ContractViolation(HardyError, ValueError):
    """An input broke a documented precondition (non-unit vector, C out of range, ...)."""


class ConditioningOnNullEvent(HardyError, ZeroDivisionError):
    """The conditioning outcome has (numerically) zero marginal probability."""


class DegenerateDirection(HardyError, ArithmeticError):
    """A constraint direction collapsed to the zero vector and cannot be normalized."""


class DegenerateGeometry(HardyError, ArithmeticError):
    """The plane spanned by the measurement vectors collapsed to a line."""


class OutOfRange(HardyError, ValueError):
    """A geometric parameter lies outside the realizable range."""
