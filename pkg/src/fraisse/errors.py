"""Exception hierarchy shared by all modules."""


class FraisseError(Exception):
    """Base class for every error raised by this package."""


class MismatchedEndpoints(FraisseError):
    pass


class SizeLimitExceeded(FraisseError):
    pass


class ParseError(FraisseError):
    pass


class IndexOutOfRange(FraisseError):
    pass


class PreconditionFailed(FraisseError):
    """A property verifier rejected the input of a construction."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class AmalgamationSearchFailed(FraisseError):
    """Bounded search found no cocone; ``span`` and ``stage`` locate it."""

    def __init__(self, message, span=None, stage=None):
        super().__init__(message)
        self.span = span
        self.stage = stage


class ExtensionSearchFailed(FraisseError):
    def __init__(self, message, stage=None, arrow=None):
        super().__init__(message)
        self.stage = stage
        self.arrow = arrow


class NonInjectiveBond(FraisseError):
    pass


class NoPushout(FraisseError):
    pass


class UniqueMediatorMissing(FraisseError):
    pass


class NoCoherentRetractions(FraisseError):
    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class IncompleteEnumeration(FraisseError):
    pass


class HeightExceeded(FraisseError):
    pass


class InsufficientHeadroom(FraisseError):
    pass


class CapExceeded(FraisseError):
    pass


class DimensionMismatch(FraisseError):
    pass


class NotIsometric(FraisseError):
    pass


class NotLeftInvertible(FraisseError):
    pass


class CoconeMismatch(FraisseError):
    pass
