"""Exception types shared across the package."""


class GrassframeError(Exception):
    """Base class for all package errors."""


class NumericalError(GrassframeError, ArithmeticError):
    """A computation failed for numerical reasons."""


class ConvergenceError(NumericalError):
    """An iterative method hit its iteration cap."""


class RankDeficientError(NumericalError):
    """A matrix that must have full rank does not."""


class FrameValidationError(GrassframeError, ValueError):
    """Frame data violates an invariant (norms, field, spanning, file format)."""


class SpectrumError(GrassframeError, ValueError):
    """A Gram matrix does not have the two-eigenvalue spectrum required for synthesis."""
