"""Canonical tight frames h_k = sqrt(N/m) S^{-1/2} f_k and their correlation bound."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import matkernel
from .frame import Frame, frame_bounds, frame_operator, max_correlation

UNIFORM_TOL = 1e-8
BOUND_SLACK = 1e-9


class BoundViolation(AssertionError):
    """The canonical-tight correlation inequality failed (should be impossible)."""


def canonical_tighten(frame: Frame) -> Frame:
    """Return the scaled canonical tight frame; frame operator becomes (N/m) I.

    Columns are never renormalized, since that would destroy tightness. For
    frames that are not generated by a group-like system the result is in
    general not uniform; see ``Frame.uniformity_residual``.
    """
    rho = frame.n / frame.m
    h = math.sqrt(rho) * (matkernel.inv_sqrt(frame_operator(frame)) @ frame.vectors)
    if frame.field == "R":
        h = h.real
    return Frame(h, frame.field, check_uniform=False)


def tighten_penalty(rho: float, lower: float, upper: float) -> float:
    """2 max(|1 - sqrt(rho/A)|, |1 - sqrt(rho/B)|)."""
    return 2.0 * max(abs(1.0 - math.sqrt(rho / lower)), abs(1.0 - math.sqrt(rho / upper)))


@dataclass(frozen=True)
class TightenReport:
    lhs: float
    rhs: float
    penalty: float
    rho: float
    lower: float
    upper: float
    uniformity_residual: float
    uniform_after: bool

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs


def verify_tighten_bound(frame: Frame) -> TightenReport:
    """Compare the maximal correlation before and after canonical tightening.

    Raises :class:`BoundViolation` if max|<h_k,h_l>| exceeds
    max|<f_k,f_l>| + penalty by more than 1e-9.
    """
    bounds = frame_bounds(frame)
    rho = frame.n / frame.m
    tight = canonical_tighten(frame)
    penalty = tighten_penalty(rho, bounds.lower, bounds.upper)
    lhs = max_correlation(tight)
    rhs = max_correlation(frame) + penalty
    resid = tight.uniformity_residual
    report = TightenReport(lhs, rhs, penalty, rho, bounds.lower, bounds.upper, resid, resid <= UNIFORM_TOL)
    if lhs > rhs + BOUND_SLACK:
        raise BoundViolation(f"canonical tight correlation {lhs:.12g} exceeds bound {rhs:.12g}")
    return report
