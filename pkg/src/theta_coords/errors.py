"""Exception types raised by the toolkit.

Every domain error derives from :class:`ThetaError`; the CLI maps
:class:`SchemaError` to exit code 1 and every other :class:`ThetaError`
to exit code 2.
"""


class ThetaError(ValueError):
    """Base class for all toolkit errors."""


class SchemaError(ThetaError):
    """Malformed input document."""


class InvalidSpecialization(ThetaError):
    pass


class CharacteristicClash(InvalidSpecialization):
    pass


class NonzeroRemainder(ThetaError):
    pass


class NotInvariant(ThetaError):
    pass


class NotFoundWithinBound(ThetaError):
    pass


class BadShape(ThetaError):
    pass


class ArityMismatch(ThetaError):
    pass


class NonInvertibleEntry(ThetaError):
    pass


class SingularMatrix(ThetaError):
    pass


class MissingSqrtQ(ThetaError):
    pass


class NotDiagonal(ThetaError):
    pass


class TooLarge(ThetaError):
    pass
