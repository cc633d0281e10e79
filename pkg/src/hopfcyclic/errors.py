"""Exception hierarchy shared by every module of the package."""


class HopfCyclicError(Exception):
    """Base class for all errors raised by hopfcyclic."""


class DimensionMismatch(HopfCyclicError):
    pass


class CompositionNotZero(HopfCyclicError):
    """Raised when d_out @ d_in != 0; usually an upstream structure error."""


class SingularMatrix(HopfCyclicError):
    pass


class NotFiniteDimensional(HopfCyclicError):
    pass


class TruncationOverflow(HopfCyclicError):
    """A product escaped the filtration window; rebuild with a larger cutoff."""


class NotACharacter(HopfCyclicError):
    pass


class NotGroupLike(HopfCyclicError):
    pass


class AntipodeNotInvertible(HopfCyclicError):
    pass


class NotAyd(HopfCyclicError):
    pass


class NotSayd(HopfCyclicError):
    pass


class OperatorDoesNotDescend(HopfCyclicError):
    pass


class WindowExceeded(HopfCyclicError):
    pass


class NotCompatibleCoefficients(HopfCyclicError):
    pass


class NotASubalgebra(HopfCyclicError):
    pass


class NotMatched(HopfCyclicError):
    pass


class InputError(HopfCyclicError):
    """Problems with user supplied presentation files (exit code 2)."""


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class MalformedRational(InputError):
    pass


class UnresolvedReference(InputError):
    pass


class NotAComodule(HopfCyclicError):
    pass
