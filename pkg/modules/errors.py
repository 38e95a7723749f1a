"""Exception hierarchy shared by the combinatorics modules."""


class CombinatoricsError(Exception):
    """Base class for every error raised by the engine."""


class InvalidInputError(CombinatoricsError, ValueError):
    """Malformed or out-of-range input (duplicate letters, bad indices, unparsable text)."""


class PreconditionError(CombinatoricsError, ValueError):
    """Input is well formed but outside the domain of the operation."""


class NonGammaExpressibleError(CombinatoricsError, ValueError):
    """Polynomial cannot be written in the basis t^k (1+t)^(n-1-2k)."""


class SeriesDivisionError(CombinatoricsError, ZeroDivisionError):
    """Series division by a non-invertible series or by a too-high power of z."""


class UnsupportedPatternError(CombinatoricsError, KeyError):
    """No closed form is registered for the requested pattern set."""

    def __str__(self) -> str:
        # KeyError quotes its argument; keep the plain message
        return str(self.args[0]) if self.args else ''


class ConsistencyError(CombinatoricsError, ArithmeticError):
    """An internal identity failed; signals a bug rather than bad input."""
