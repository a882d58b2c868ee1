"""Exception hierarchy shared by all modules."""


class TogliattiError(Exception):
    """Base class for every error raised by this package."""


class ParseError(TogliattiError, ValueError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
            if text is not None:
                message += f"\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class UnknownVariableError(ParseError):
    pass


class RingMismatchError(TogliattiError, ValueError):
    pass


class NonConstantEntryError(TogliattiError, ValueError):
    pass


class IncompleteAssignmentError(TogliattiError, ValueError):
    pass


class ArtinianInconclusive(TogliattiError):
    """Hilbert function did not reach zero below the degree cap."""

    def __init__(self, cap, hilbert):
        self.cap = cap
        self.hilbert = list(hilbert)
        super().__init__(f"Hilbert function still nonzero at degree cap {cap}: {self.hilbert}")


class NotArtinianError(TogliattiError, ValueError):
    pass


class MixedDegreeError(TogliattiError, ValueError):
    pass


class BaseLocusError(TogliattiError, ValueError):
    """A point where every coordinate of a parametrization vanishes."""


class PointNotInSourceError(TogliattiError, ValueError):
    pass


class CoincidentPointsError(TogliattiError, ValueError):
    pass


class CorankError(TogliattiError, ValueError):
    def __init__(self, corank):
        self.corank = corank
        super().__init__(f"expected a one-dimensional kernel, got dimension {corank}")


class PreconditionError(TogliattiError, ValueError):
    pass


class DataIntegrityError(TogliattiError):
    pass


class UnknownNameError(TogliattiError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""
