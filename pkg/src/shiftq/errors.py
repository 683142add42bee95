"""Exception hierarchy.

Mathematical *failures* (an identity that does not hold) are report data, not
exceptions; these classes cover misuse and structurally impossible requests.
"""


class ShiftQError(Exception):
    """Base class for all library errors."""


class DivisionByZero(ShiftQError, ZeroDivisionError):
    pass


class NonInvertibleSeries(ShiftQError):
    pass


class NonzeroConstantTerm(ShiftQError):
    pass


class ConstantTermNotOne(ShiftQError):
    pass


class ZeroScale(ShiftQError):
    pass


class InvalidType(ShiftQError):
    pass


class SingularMatrix(ShiftQError):
    pass


class ZeroSpectralParameter(ShiftQError):
    pass


class CartanMismatch(ShiftQError):
    pass


class NotPolynomial(ShiftQError):
    pass


class NotTruncatable(ShiftQError):
    pass


class NotPolynomialSeries(ShiftQError):
    pass


class ZeroFlavor(ShiftQError):
    pass


class ZeroParameter(ShiftQError):
    pass
