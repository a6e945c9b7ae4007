"""Exception hierarchy shared by all modules."""


class GaussGraphError(ValueError):
    """Base class for every error raised by this package."""


class InvalidDimensionError(GaussGraphError):
    pass


class InvalidParameterError(GaussGraphError):
    pass


class InvalidCovarianceError(GaussGraphError):
    pass


class InvalidGraphError(GaussGraphError):
    pass


class IllConditionedStateError(GaussGraphError):
    pass


class ImpureStateError(GaussGraphError):
    def __init__(self, message, deviation=float("nan")):
        super().__init__(message)
        self.deviation = deviation


class WrongBranchError(GaussGraphError):
    """Raised when a block with non-negative determinant reaches a Det<0 routine."""


class DegenerateColumnError(GaussGraphError):
    pass


class DegeneratePhaseError(GaussGraphError):
    pass


class ParseError(GaussGraphError):
    """Malformed input file; ``line``/``column`` point at JSON syntax errors, ``where`` at schema errors."""

    def __init__(self, message, line=None, column=None, where=None):
        super().__init__(message)
        self.line = line
        self.column = column
        self.where = where

    def location(self):
        if self.line is not None:
            return f"line {self.line} column {self.column}"
        return self.where or "document"
