"""Exception hierarchy for zprconv."""


class ZprError(Exception):
    """Base class for all library errors."""


class InvalidContext(ZprError, ValueError):
    pass


class ContextMismatch(ZprError, ValueError):
    pass


class NotAUnit(ZprError, ArithmeticError):
    pass


class ZeroDenominator(ZprError, ZeroDivisionError):
    pass


class NilpotentDenominator(ZprError, ArithmeticError):
    """Denominator vanishes mod p, so it is not invertible in the Laurent ring."""


class NotFullRowRank(ZprError, ValueError):
    pass


class SingularMatrix(ZprError, ArithmeticError):
    pass


class DimensionMismatch(ZprError, ValueError):
    pass


class NotFree(ZprError, ValueError):
    pass


class NotConstant(ZprError, ValueError):
    pass


class BoundTooSmall(ZprError, ValueError):
    pass


class SearchTooLarge(ZprError, RuntimeError):
    """An exact search would exceed its enumeration cap."""


class TooLarge(ZprError, ValueError):
    """Brute-force enumeration request beyond the oracle size cap."""


class FormatError(ZprError, ValueError):
    """Malformed code file; ``field`` names the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
