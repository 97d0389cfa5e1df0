"""Exception types raised by bctforge."""


class BctForgeError(Exception):
    """Base class for all library errors."""


class NotPrimeError(BctForgeError, ValueError):
    pass


class NotPrimePowerError(BctForgeError, ValueError):
    pass


class EvenCharacteristicError(BctForgeError, ValueError):
    pass


class FieldTooLargeError(BctForgeError, ValueError):
    pass


class DivisionByZeroError(BctForgeError, ZeroDivisionError):
    pass


class InvalidSubfieldDegreeError(BctForgeError, ValueError):
    pass


class NotSquareFieldError(BctForgeError, ValueError):
    pass


class InvalidExponentError(BctForgeError, ValueError):
    pass


class ZeroDifferenceError(BctForgeError, ValueError):
    """Raised when a DDT entry is requested for input difference 0."""


class ZeroBError(BctForgeError, ValueError):
    """Raised when a BCT row is requested for output difference 0."""


class DegenerateLeadingCoefficientError(BctForgeError, ValueError):
    pass


class HypothesisViolatedError(BctForgeError, ValueError):
    """The closed-form counters only apply under congruence conditions on q."""
