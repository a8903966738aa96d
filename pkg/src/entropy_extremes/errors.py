"""Exception hierarchy. Every error raised by the package derives from
:class:`EntropyExtremesError`, which is itself a :class:`ValueError`."""


class EntropyExtremesError(ValueError):
    pass


class DimensionTooSmall(EntropyExtremesError):
    pass


class NotADistribution(EntropyExtremesError):
    pass


class DimensionMismatch(EntropyExtremesError):
    pass


class ParamOutOfRange(EntropyExtremesError):
    pass


class EntropyOutOfRange(EntropyExtremesError):
    pass


class NormOutOfRange(EntropyExtremesError):
    pass


class InvalidOrder(EntropyExtremesError):
    pass


class ShannonOrderUnsupported(InvalidOrder):
    """Order 1 carries no information for norm-based bounds: every
    probability vector has unit 1-norm."""


class NonPositiveArgument(EntropyExtremesError):
    pass


class DomainViolation(EntropyExtremesError):
    pass


class NotFocusing(EntropyExtremesError):
    pass


class RhoOutOfRange(EntropyExtremesError):
    pass


class NoCurves(EntropyExtremesError):
    pass
