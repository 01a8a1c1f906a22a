"""Exception hierarchy shared by every module."""


class IEPLError(Exception):
    """Base class for all library errors."""


class NotRealizableError(IEPLError):
    """A target spectrum fails the realizability test for the requested family."""


class UnsupportedFamilyError(IEPLError):
    """The requested graph family has no solved realizability/catalog result."""


class NumericalError(IEPLError):
    """A numerical construction missed its residual or sign-pattern tolerance."""


class SolverLimitError(IEPLError):
    """The exhaustive support scan was refused because the graph is too large."""


class ConvergenceError(IEPLError):
    """Coordinate descent hit its iteration cap; ``result`` holds the best iterate."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
