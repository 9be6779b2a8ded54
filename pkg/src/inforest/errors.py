"""Exception hierarchy shared by all inforest modules."""


class InforestError(Exception):
    """Base class for every error raised by this package."""


class DigraphError(InforestError, ValueError):
    """Input violates a digraph invariant."""


class EmptyGraphOrder(DigraphError):
    pass


class NodeOutOfRange(DigraphError):
    pass


class SelfLoop(DigraphError):
    pass


class DuplicateArc(DigraphError):
    pass


class NonPositiveWeight(DigraphError):
    pass


class ParseError(InforestError, ValueError):
    """Malformed edge-list text. ``lineno`` is 1-based (0 if unknown)."""

    def __init__(self, message, lineno=0):
        self.lineno = lineno
        if lineno:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class NonPositiveStepSize(InforestError, ValueError):
    pass


class NonPositiveStepOrHorizon(InforestError, ValueError):
    pass


class DimensionMismatch(InforestError, ValueError):
    pass


class StepSizeOutsideStochasticRange(InforestError, ValueError):
    pass


class NoConvergenceWithinBudget(InforestError, ArithmeticError):
    pass


class GraphTooLargeForEnumeration(InforestError, ValueError):
    pass


class ConvergenceFailure(InforestError, ArithmeticError):
    pass


class SingularPairing(InforestError, ArithmeticError):
    """Left/right kernel bases of L failed to pair into an invertible matrix."""
