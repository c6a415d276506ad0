"""Exception hierarchy shared by every defectlab module."""


class DefectLabError(Exception):
    """Base class; the CLI maps subclasses onto exit codes."""


class InvalidInput(DefectLabError, ValueError):
    pass


class AmbientMismatch(InvalidInput):
    pass


class InconclusiveLocus(DefectLabError):
    """The Macaulay sweep hit its degree cap without a verdict."""

    def __init__(self, message, hilbert_values=None):
        super().__init__(message)
        self.hilbert_values = hilbert_values or {}


class PositionViolation(DefectLabError):
    pass


class SearchFailure(DefectLabError):
    """Randomised replacement search ran out of retries.

    ``partial`` holds the hypersurfaces P_1..P_t accepted before the failure.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = list(partial or [])


class DependenceError(DefectLabError):
    """Raised with ``combination``: coefficients of a vanishing linear combination."""

    def __init__(self, message, combination=None):
        super().__init__(message)
        self.combination = combination


class CurveDegeneracy(DefectLabError):
    pass


class NumericFailure(DefectLabError):
    pass


class UndefinedDefect(DefectLabError):
    pass


class NondegeneracyFailure(DefectLabError):
    def __init__(self, message, combination=None):
        super().__init__(message)
        self.combination = combination


class NotAnImmersion(DefectLabError):
    pass
