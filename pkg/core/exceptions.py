"""Domain errors shared by every app"""


class PmtoError(Exception):
    """Base class for all errors raised by the library"""


class InvalidArgument(PmtoError, ValueError):
    pass


class NumericalFailure(PmtoError, ArithmeticError):
    """A linear-algebra or physics computation could not produce a finite value"""

    def __init__(self, message, jitter=None, inputs=None):
        super().__init__(message)
        self.jitter = jitter
        self.inputs = inputs


class InsufficientData(PmtoError):
    pass


class InvalidState(PmtoError):
    pass


class InvalidConfig(PmtoError):
    pass


class ConsistencyError(PmtoError):
    pass


class Unsupported(PmtoError):
    pass
