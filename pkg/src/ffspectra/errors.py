"""Exception hierarchy shared by all ffspectra modules."""


class FFSpectraError(Exception):
    """Base class for every error raised by the package."""


# field


class NotPrime(FFSpectraError, ValueError):
    pass


class ReducibleModulus(FFSpectraError, ValueError):
    pass


class DegreeMismatch(FFSpectraError, ValueError):
    pass


class FieldTooLarge(FFSpectraError, ValueError):
    pass


class DivisionByZero(FFSpectraError, ZeroDivisionError):
    pass


class ContextMismatch(FFSpectraError, TypeError):
    pass


class NotADivisor(FFSpectraError, ValueError):
    pass


class EvenCharacteristic(FFSpectraError, ValueError):
    pass


class OddCharacteristic(FFSpectraError, ValueError):
    pass


# solvers


class ZeroLeadingCoefficient(FFSpectraError, ValueError):
    pass


class ZeroLinearCoefficient(FFSpectraError, ValueError):
    pass


class ZeroConstant(FFSpectraError, ValueError):
    pass


class DegenerateA(FFSpectraError, ValueError):
    pass


# spectra


class ZeroDirection(FFSpectraError, ValueError):
    pass


class NotAMonomial(FFSpectraError, TypeError):
    pass


class NotAPermutation(FFSpectraError, ValueError):
    pass


class ParityMismatch(FFSpectraError, ValueError):
    pass


# closed forms


class DegenerateField(FFSpectraError, ValueError):
    pass


class EvenDegree(FFSpectraError, ValueError):
    pass


class BadCongruence(FFSpectraError, ValueError):
    pass


class WrongCharacteristic(FFSpectraError, ValueError):
    pass


class MalformedCubic(FFSpectraError, ValueError):
    pass


class GcdViolation(FFSpectraError, ValueError):
    pass


class WrongCodimension(FFSpectraError, ValueError):
    pass


class PredicateViolation(FFSpectraError, AssertionError):
    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


# cli


class ParseError(FFSpectraError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class BudgetExceeded(FFSpectraError, RuntimeError):
    pass
