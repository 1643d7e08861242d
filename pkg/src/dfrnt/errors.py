"""Exception hierarchy shared by the transform, cipher and codec layers."""


class DfrntError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(DfrntError, ValueError):
    pass


class DomainError(DfrntError, ValueError):
    pass


class NumericError(DfrntError, ArithmeticError):
    pass


class ConvergenceError(DfrntError, ArithmeticError):
    def __init__(self, message, sweeps=None):
        super().__init__(message)
        self.sweeps = sweeps


class UnsupportedGenerator(DfrntError, ValueError):
    pass


class DegenerateOrderError(DfrntError, ValueError):
    pass


class FormatError(DfrntError, ValueError):
    pass


class UnsupportedFormat(FormatError):
    pass


class UnsupportedVersion(FormatError):
    pass
