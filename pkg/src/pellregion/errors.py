"""Exception hierarchy shared by every module."""


class PellError(ValueError):
    """Base class for all library errors."""


class InvalidInstance(PellError):
    pass


class NonPositive(InvalidInstance):
    pass


class DIsOne(InvalidInstance):
    pass


class PerfectSquare(InvalidInstance):
    pass


class NegativeArgument(PellError):
    pass


class DomainError(PellError):
    pass


class PrecisionFailure(PellError):
    """The floating-point candidate for a floor was off by more than one."""


class InvalidLambda(PellError):
    pass


class LambdaTooSmall(PellError):
    pass


class BelowThreshold(PellError):
    """The shifted closed-form count was requested for a radius below K."""

    def __init__(self, message, threshold=None):
        super().__init__(message)
        self.threshold = threshold


class ZeroA(PellError):
    pass


class ScanTooLarge(PellError):
    pass
