"""Exception types shared across the library."""


class SumsetVCError(Exception):
    """Base class for every library-raised error."""


class EmptyFamilyError(SumsetVCError, ValueError):
    """An analytical operation received an empty family or point set."""


class DimensionMismatchError(SumsetVCError, ValueError):
    """Operands live over different ground sets, moduli or dimensions."""


class ParameterError(SumsetVCError, ValueError):
    """A parameter is outside its documented range."""


class ResourceLimitError(SumsetVCError, RuntimeError):
    """A size guard would be exceeded; raised instead of truncating silently."""


class WitnessNotFoundError(SumsetVCError, ValueError):
    """No absent-pattern witness exists because the set is shattered."""


class FamilyFormatError(SumsetVCError, ValueError):
    """A family text file failed to parse."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number
