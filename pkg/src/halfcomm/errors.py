"""Exception types shared by the halfcomm modules."""


class PresentationError(ValueError):
    """An operation was applied to an element of the wrong presentation."""


class DimensionMismatchError(ValueError):
    """Operands live over different matrix dimensions."""


class IndexRangeError(ValueError):
    """A generator index lies outside 1..n."""


class DegreeCapError(RuntimeError):
    """The requested computation exceeds the configured degree cap."""


class ClosureSizeError(RuntimeError):
    """A rewrite closure grew past the requested maximum size."""


class ParseError(ValueError):
    """Expression text does not conform to the grammar."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
