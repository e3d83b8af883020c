"""Exception hierarchy."""


class ValfrobError(Exception):
    """Base class for library errors."""


class FieldError(ValfrobError):
    pass


class ArityError(ValfrobError):
    pass


class ParseError(ValfrobError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownVariableError(ParseError):
    pass


class ZeroDenominatorError(ValfrobError, ZeroDivisionError):
    pass


class PrecisionExhausted(ValfrobError):
    """A precision/enclosure cap was reached before a result could be certified."""

    def __init__(self, message, limit=None):
        self.limit = limit
        super().__init__(message)


class GroupError(ValfrobError):
    pass


class NotPDivisibleError(GroupError):
    pass


class ValuationError(ValfrobError):
    pass


class ZeroValueError(ValuationError):
    """The valuation of zero was requested."""


class NotMonomializedError(ValuationError):
    pass


class OutsideValuationRingError(ValuationError):
    pass


class BasisError(ValfrobError):
    pass


class DescriptorError(ValfrobError):
    pass


class InequalityViolation(ValfrobError):
    """An inequality that holds as a theorem failed: the input descriptors are inconsistent."""
