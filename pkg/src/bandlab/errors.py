"""Exception hierarchy shared by every bandlab module."""


class BandlabError(Exception):
    """Base class for all errors raised by bandlab."""


class InexactDivision(BandlabError, ArithmeticError):
    """The divisor does not divide the dividend in the Laurent polynomial ring."""


class ZeroToNegativePower(BandlabError, ZeroDivisionError):
    """A variable with a negative exponent was evaluated at zero."""


class IndexOutOfRange(BandlabError, IndexError):
    pass


class InvalidWord(BandlabError, ValueError):
    pass


class TypeNotSupported(BandlabError, NotImplementedError):
    pass


class NotInCell(BandlabError, ValueError):
    """Matrix is not in the reduced double Bruhat cell L^{c,e}."""


class NotInM(BandlabError, ValueError):
    """Matrix is not in the double coset U c U."""


class NotInOmega(BandlabError, ValueError):
    """A trailing principal minor vanishes, so no twisted Birkhoff factorization exists."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"trailing minor Delta_(w0 w_{index}) vanishes")


class DimensionMismatch(BandlabError, ValueError):
    pass


class WindowExceeded(BandlabError, IndexError):
    pass


class FrozenVertex(BandlabError, ValueError):
    pass


class BadParity(BandlabError, ValueError):
    pass


class UnknownSuite(BandlabError, KeyError):
    pass
