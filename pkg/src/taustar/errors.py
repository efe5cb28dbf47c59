"""Exception hierarchy shared by every module in the package.

Each class carries a stable ``code`` string so front ends (CLI, foreign
bindings) can map failures without parsing prose messages.
"""

__all__ = [
    "TauStarError",
    "LengthMismatchError",
    "NonFiniteValueError",
    "TooFewSamplesError",
    "GridTooLargeError",
    "InvalidPermutationCountError",
    "CsvFormatError",
]


class TauStarError(Exception):
    """Base class for all errors raised by this package."""

    code = "Error"


class LengthMismatchError(TauStarError, ValueError):
    """The two input sequences have different lengths."""

    code = "LengthMismatch"


class NonFiniteValueError(TauStarError, ValueError):
    """An input value is NaN or infinite."""

    code = "NonFiniteValue"

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class TooFewSamplesError(TauStarError, ValueError):
    """The operation needs more observations than were supplied."""

    code = "TooFewSamples"


class GridTooLargeError(TauStarError):
    """The rank grid would exceed the configured cell budget."""

    code = "GridTooLarge"


class InvalidPermutationCountError(TauStarError, ValueError):
    """The permutation test needs at least one permutation."""

    code = "InvalidPermutationCount"


class CsvFormatError(TauStarError, ValueError):
    """A CSV input file is malformed; ``line`` is 1-based."""

    code = "CsvFormat"

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line
