"""Exception hierarchy shared by all modules."""


class GaussTransError(Exception):
    """Base class for every error raised by :mod:`gausstrans`."""


class InvalidArgument(GaussTransError, ValueError):
    """Malformed input: wrong shape, negative squeezing, odd dimension, ..."""


class PreconditionError(GaussTransError, ValueError):
    """The input is well formed but violates an operation's precondition."""


class InconsistencyError(GaussTransError, ValueError):
    """Input data contradict each other (e.g. a block spectrum below one)."""


class NumericDomainError(GaussTransError, ArithmeticError):
    """A matrix left the domain of an operation (e.g. not positive definite)."""


class NumericInstabilityError(GaussTransError, ArithmeticError):
    """A decomposition step failed to meet its tolerance."""


class SingularMapError(NumericDomainError):
    """The matrix inverted by a Gaussian map is singular or too ill conditioned."""


class NumericSearchError(GaussTransError, RuntimeError):
    """A bounded search ran past its cap."""


class InfeasibleTransformation(GaussTransError):
    """No Gaussian channel realizes the requested transformation.

    Attributes:
        boundary: True when the constraint matrix is singular rather than
            indefinite (the closed form degenerates, the transformation may
            still be possible by other means).
        min_eigenvalue: smallest eigenvalue of the violated constraint matrix.
    """

    def __init__(self, message, *, boundary=False, min_eigenvalue=float("nan")):
        super().__init__(message)
        self.boundary = boundary
        self.min_eigenvalue = min_eigenvalue
