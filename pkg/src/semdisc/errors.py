"""Exception types shared across the package."""


class SemdiscError(Exception):
    """Base class for all semdisc errors."""


class ValidationError(SemdiscError):
    """Input data violates a documented contract."""


class DegenerateChromaticityError(ValidationError):
    """xyY coordinate with y = 0 cannot be converted to LAB."""


class WhitePointMismatchError(ValidationError):
    """Two colors expressed under different white points were combined."""


class UnknownNameError(ValidationError, KeyError):
    """A concept name or color id is not present in the table."""

    def __str__(self):
        # KeyError reprs its argument; keep the plain message.
        return Exception.__str__(self)
