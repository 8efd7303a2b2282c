"""Exception hierarchy shared by the toolkit."""


class RadialMapsError(Exception):
    """Base class for every error raised by :mod:`radialmaps`."""


class SeriesError(RadialMapsError, ValueError):
    pass


class DivisionByZeroAtOrigin(SeriesError, ZeroDivisionError):
    pass


class DegreeUnderflow(SeriesError):
    pass


class NonOriginPreservingInner(SeriesError):
    pass


class DimensionMismatch(RadialMapsError, ValueError):
    pass


class UndefinedSupport(RadialMapsError, ValueError):
    """Raised when a support functional is requested at the zero vector."""


class NonUnitVector(RadialMapsError, ValueError):
    pass


class DegeneracyError(RadialMapsError, ArithmeticError):
    """A derivative or quotient vanishes where the computation needs it not to.

    ``witness`` carries the offending point (vector or complex number).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class OutOfBallError(RadialMapsError, ValueError):
    pass


class TruncationOverflow(RadialMapsError, ValueError):
    pass


class UnsupportedModel(RadialMapsError, ValueError):
    pass


class NotInClass(RadialMapsError, ValueError):
    """Precondition gate failure (e.g. a map outside the normalized Bloch class)."""


class NonUniqueRoot(RadialMapsError, RuntimeError):
    pass


class SpecParseError(RadialMapsError, ValueError):
    """Parse failure in a map spec or serialized map, with 1-based position."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
