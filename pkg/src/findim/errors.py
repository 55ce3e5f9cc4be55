"""Exception hierarchy shared by every layer of the package."""


class FindimError(Exception):
    """Base class for all errors raised by findim."""


class InvalidPresentation(FindimError, ValueError):
    """A quiver or relation set violates the structural invariants."""


class InfiniteDimensional(FindimError):
    """The presented algebra has arbitrarily long nonzero paths."""


class InvalidExponentMatrix(FindimError, ValueError):
    """An exponent matrix fails lambda_ii = 0 or the triangle inequality."""


class InvalidBasedAlgebra(FindimError, ValueError):
    """A multiplication table is not associative, unital or cancellative."""


class NotABasisPath(FindimError, ValueError):
    pass


class DimensionBoundExceeded(FindimError):
    def __init__(self, dim, bound):
        super().__init__(f"module dimension {dim} exceeds the configured bound {bound}")
        self.dim = dim
        self.bound = bound


class ParseError(FindimError, ValueError):
    """A text input was rejected; ``line`` and ``column`` are 1-based."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is None:
            super().__init__(message)
        else:
            super().__init__(f"line {line}, column {column}: {message}")


class DSLSyntaxError(ParseError):
    pass


class ResolutionError(ParseError):
    """A name does not resolve to a declared vertex or arrow."""


class NonParallelElement(ParseError, TypeError):
    """Paths that do not compose, or a linear combination of non-parallel paths."""
