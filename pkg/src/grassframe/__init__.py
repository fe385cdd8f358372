"""Grassmannian frames: explicit constructions, numerical search and analysis."""

from .errors import (
    ConvergenceError,
    FrameValidationError,
    GrassframeError,
    NumericalError,
    RankDeficientError,
    SpectrumError,
)
from .frame import COMPLEX, REAL, Frame, gram, max_correlation, metrics, welch_bound
from .matkernel import BACKEND

__all__ = [
    "BACKEND",
    "COMPLEX",
    "REAL",
    "ConvergenceError",
    "Frame",
    "FrameValidationError",
    "GrassframeError",
    "NumericalError",
    "RankDeficientError",
    "SpectrumError",
    "gram",
    "max_correlation",
    "metrics",
    "welch_bound",
]
