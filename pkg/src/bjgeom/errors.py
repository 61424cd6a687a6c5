"""Exception hierarchy shared by every module."""


class GeometryError(Exception):
    """Base class for all errors raised by bjgeom."""


class ZeroVector(GeometryError, ValueError):
    pass


class ZeroOperator(GeometryError, ValueError):
    pass


class ShapeMismatch(GeometryError, ValueError):
    pass


class PreconditionViolated(GeometryError, ValueError):
    pass


class DegenerateComponent(PreconditionViolated):
    """No unit vector of a one-dimensional component is orthogonal to a nonzero scalar."""


class UnsupportedDimension(PreconditionViolated):
    pass


class DimensionTooLarge(PreconditionViolated):
    pass


class SingularBasis(GeometryError, ValueError):
    pass


class NotNormalized(PreconditionViolated):
    pass


class WrongVerdict(PreconditionViolated):
    pass


class EmptyInput(GeometryError, ValueError):
    pass


class WitnessNotFound(GeometryError, RuntimeError):
    pass


class ParseError(GeometryError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
        self.line = line
        self.column = column


class DimensionError(ParseError):
    pass


class BudgetExhausted(GeometryError, RuntimeError):
    """Raised by strict searches; ``result`` holds the best-so-far."""

    def __init__(self, result):
        super().__init__("search budget exhausted before the candidate pool was covered")
        self.result = result
