"""Exception hierarchy shared by all modules."""


class CubicalFormsError(Exception):
    """Base class for every error raised by this package."""


class NotTwoLocallyInvertible(CubicalFormsError, ZeroDivisionError):
    """Inverse of an element with even numerator requested in the 2-local ring."""


class VariableMismatch(CubicalFormsError, ValueError):
    pass


class NonIntegerCoefficient(CubicalFormsError, ValueError):
    pass


class NonUnitConstantTerm(CubicalFormsError, ZeroDivisionError):
    pass


class NonPositiveValuation(CubicalFormsError, ValueError):
    pass


class NotDivisible(CubicalFormsError, ArithmeticError):
    """A series quotient is not a power series (or a polynomial quotient is not exact)."""


class BeyondTruncation(CubicalFormsError, IndexError):
    pass


class MismatchAgainstPaper(CubicalFormsError, AssertionError):
    def __init__(self, message, term=None):
        super().__init__(message)
        self.term = term


class InternalMismatch(CubicalFormsError, AssertionError):
    pass


class NonUnitU(CubicalFormsError, ValueError):
    pass


class NotSymmetric(CubicalFormsError, ValueError):
    pass


class DivisionByNonUnit(CubicalFormsError, ZeroDivisionError):
    pass


class MalformedElement(CubicalFormsError, ValueError):
    pass


class WindowTooSmall(CubicalFormsError, ValueError):
    pass
