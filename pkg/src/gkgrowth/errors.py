"""Exception hierarchy shared by all modules.

The CLI maps these onto process exit codes: input problems exit 2,
resource caps exit 3, splitting failures exit 4 and internal consistency
failures (bug detectors) exit 5.
"""


class GkGrowthError(Exception):
    """Base class for all errors raised by this package."""


class InputError(GkGrowthError, ValueError):
    """Malformed user input (expressions, documents, flag values)."""


class PolyParseError(InputError):
    """Syntax error in a polynomial expression; carries the 0-based position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariableError(PolyParseError):
    pass


class NegativeExponentError(PolyParseError):
    pass


class RingMismatchError(GkGrowthError, ValueError):
    """Operands belong to different coefficient rings."""


class ShapeMismatchError(GkGrowthError, ValueError):
    """Matrix dimensions are incompatible."""


class CapExceededError(GkGrowthError, RuntimeError):
    """A configured resource cap (basis size, word count, level) was hit."""


class NonStabilizingError(CapExceededError):
    """A filtration that was required to stabilize did not, within the cap."""


class NotSplitOverBaseError(GkGrowthError, RuntimeError):
    """The semisimple quotient does not split over the base field.

    Raised instead of silently extending the field; the caller decides
    whether this is fatal.
    """


class InsufficientDataError(GkGrowthError, ValueError):
    """A growth table is too short for the requested analysis window."""


class InternalCheckError(GkGrowthError, RuntimeError):
    """An internal exact identity failed; indicates a bug, never user error."""
