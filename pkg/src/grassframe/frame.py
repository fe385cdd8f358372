"""Finite frames and their metrics.

A :class:`Frame` stores N vectors of C^m (or R^m) as the columns of an m x N
complex array. Analysis is ``T f = F^H f`` and synthesis is ``T* c = F c``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import matkernel
from .errors import FrameValidationError

REAL = "R"
COMPLEX = "C"
_FIELDS = (REAL, COMPLEX)

UNIT_NORM_TOL = 1e-10
DEFAULT_TOL = 1e-8


def _check_field(field: str) -> str:
    if field not in _FIELDS:
        raise ValueError(f"field must be 'R' or 'C', got {field!r}")
    return field


class Frame:
    """An immutable frame of N vectors spanning E^m.

    Parameters
    ----------
    vectors : array_like, shape (m, N)
        Frame vectors as columns.
    field : {'R', 'C'}
        Advertised field. Real frames must have exactly zero imaginary parts.
    check_uniform : bool
        Require unit-norm columns (within 1e-10). Canonical tight frames of
        non-group frames are not uniform, so that path turns this off.
    """

    __slots__ = ("_vectors", "field")

    def __init__(self, vectors, field: str = COMPLEX, *, check_uniform: bool = True):
        field = _check_field(field)
        v = np.array(vectors, dtype=np.complex128, copy=True)
        if v.ndim != 2:
            raise FrameValidationError(f"frame must be a 2-D array, got shape {v.shape}")
        m, n = v.shape
        if m < 1 or n < m:
            raise FrameValidationError(f"need N >= m >= 1, got m={m}, N={n}")
        if not np.all(np.isfinite(v)):
            raise FrameValidationError("frame has non-finite entries")
        if field == REAL and np.any(v.imag != 0.0):
            raise FrameValidationError("real frame has non-zero imaginary parts")
        if check_uniform:
            dev = np.max(np.abs(np.linalg.norm(v, axis=0) - 1.0))
            if dev > UNIT_NORM_TOL:
                raise FrameValidationError(f"frame is not uniform: max | ||f_k|| - 1 | = {dev:.3e}")
        lam = matkernel.hermitian_eig(v @ v.conj().T).eigenvalues
        if lam[-1] <= 1e-12 * lam[0]:
            raise FrameValidationError("frame vectors do not span the space")
        v.setflags(write=False)
        self._vectors = v
        self.field = field

    @classmethod
    def normalized(cls, vectors, field: str = COMPLEX) -> "Frame":
        """Build a uniform frame, rescaling columns to unit norm (warns if any were off)."""
        v = np.array(vectors, dtype=np.complex128, copy=True)
        if v.ndim != 2:
            raise FrameValidationError(f"frame must be a 2-D array, got shape {v.shape}")
        norms = np.linalg.norm(v, axis=0)
        if np.any(norms == 0.0) or not np.all(np.isfinite(norms)):
            raise FrameValidationError("frame has a zero or non-finite column")
        dev = np.max(np.abs(norms - 1.0))
        if dev > UNIT_NORM_TOL:
            warnings.warn(f"normalizing non-uniform frame (max norm deviation {dev:.3e})", stacklevel=2)
            v = v / norms
        return cls(v, field)

    @property
    def vectors(self) -> np.ndarray:
        return self._vectors

    @property
    def m(self) -> int:
        return self._vectors.shape[0]

    @property
    def n(self) -> int:
        return self._vectors.shape[1]

    @property
    def uniformity_residual(self) -> float:
        return float(np.max(np.abs(np.linalg.norm(self._vectors, axis=0) - 1.0)))

    def column(self, k: int) -> np.ndarray:
        return self._vectors[:, k]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Frame(m={self.m}, N={self.n}, field={self.field!r})"


def gram(frame: Frame) -> np.ndarray:
    """R[k, l] = <f_k, f_l>."""
    f = frame.vectors
    return (f.conj().T @ f).T


def frame_operator(frame: Frame) -> np.ndarray:
    f = frame.vectors
    return f @ f.conj().T


def analysis_matrix(frame: Frame) -> np.ndarray:
    """N x m matrix T with (T f)_k = <f, f_k>."""
    return frame.vectors.conj().T


def analysis(frame: Frame, f) -> np.ndarray:
    f = np.asarray(f, dtype=np.complex128)
    if f.shape != (frame.m,):
        raise ValueError(f"expected a vector of length {frame.m}, got shape {f.shape}")
    return frame.vectors.conj().T @ f


def synthesis(frame: Frame, c) -> np.ndarray:
    c = np.asarray(c, dtype=np.complex128)
    if c.shape != (frame.n,):
        raise ValueError(f"expected a vector of length {frame.n}, got shape {c.shape}")
    return frame.vectors @ c


def _off_diagonal_moduli(frame: Frame) -> np.ndarray:
    r = np.abs(gram(frame))
    iu = np.triu_indices(frame.n, 1)
    return r[iu]


def max_correlation(frame: Frame) -> float:
    """max over k != l of |<f_k, f_l>|."""
    if frame.n < 2:
        raise ValueError("maximal correlation needs at least two vectors")
    return float(_off_diagonal_moduli(frame).max())


def welch_bound(m: int, n: int) -> float:
    """Lower bound sqrt((N - m) / (m (N - 1))) on the maximal correlation."""
    if m < 1 or n < m:
        raise ValueError(f"need N >= m >= 1, got m={m}, N={n}")
    if n == m:
        return 0.0
    return math.sqrt((n - m) / (m * (n - 1)))


def etf_feasible(m: int, n: int, field: str) -> bool:
    """Necessary cardinality condition for an equiangular tight frame."""
    field = _check_field(field)
    if n < m:
        raise ValueError(f"need N >= m, got m={m}, N={n}")
    return n <= (m * (m + 1) // 2 if field == REAL else m * m)


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float


def frame_bounds(frame: Frame) -> FrameBounds:
    lam = matkernel.hermitian_eig(frame_operator(frame)).eigenvalues
    return FrameBounds(float(lam[-1]), float(lam[0]))


def redundancy(frame: Frame) -> float:
    """N / sum_k <f_k, S^{-1} f_k>; equals N/m for every frame."""
    f = frame.vectors
    s_inv = matkernel.inv_hermitian(frame_operator(frame))
    trace = np.real(np.einsum("ik,ij,jk->", f.conj(), s_inv, f))
    return float(frame.n / trace)


@dataclass(frozen=True)
class FrameMetrics:
    max_correlation: float
    bounds: FrameBounds
    redundancy: float
    is_tight: bool
    is_equiangular: bool
    welch_bound: float
    achieves_welch: bool

    @property
    def gap(self) -> float:
        return self.max_correlation - self.welch_bound


def metrics(frame: Frame, tol: float = DEFAULT_TOL) -> FrameMetrics:
    if tol <= 0:
        raise ValueError("tol must be positive")
    bounds = frame_bounds(frame)
    moduli = _off_diagonal_moduli(frame)
    mc = float(moduli.max()) if moduli.size else 0.0
    equi = bool(moduli.size == 0 or np.all(np.abs(moduli - moduli.mean()) <= tol))
    wb = welch_bound(frame.m, frame.n)
    return FrameMetrics(
        max_correlation=mc,
        bounds=bounds,
        redundancy=redundancy(frame),
        is_tight=bounds.upper - bounds.lower <= tol * bounds.upper,
        is_equiangular=equi,
        welch_bound=wb,
        achieves_welch=mc <= wb + tol,
    )


# -- FRM1 text format --------------------------------------------------------

def dumps_frm1(frame: Frame) -> str:
    lines = [f"FRM1 {frame.m} {frame.n} {frame.field}"]
    for k in range(frame.n):
        col = frame.column(k)
        lines.append(" ".join(f"{x.real:.17e} {x.imag:.17e}" for x in col))
    return "\n".join(lines) + "\n"


def loads_frm1(text: str) -> Frame:
    """Parse FRM1 text. Columns off unit norm are rescaled with a warning."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 4 or rows[0][0] != "FRM1":
        raise FrameValidationError("missing 'FRM1 <m> <N> <R|C>' header")
    try:
        m, n = int(rows[0][1]), int(rows[0][2])
    except ValueError as exc:
        raise FrameValidationError(f"bad FRM1 header: {' '.join(rows[0])}") from exc
    field = rows[0][3]
    if field not in _FIELDS:
        raise FrameValidationError(f"bad field tag {field!r}")
    body = rows[1:]
    if len(body) != n:
        raise FrameValidationError(f"expected {n} vector lines, found {len(body)}")
    cols = np.empty((m, n), dtype=np.complex128)
    for k, tokens in enumerate(body):
        if len(tokens) != 2 * m:
            raise FrameValidationError(f"line {k + 2}: expected {2 * m} numbers, found {len(tokens)}")
        try:
            vals = np.array([float(t) for t in tokens])
        except ValueError as exc:
            raise FrameValidationError(f"line {k + 2}: {exc}") from exc
        cols[:, k] = vals[0::2] + 1j * vals[1::2]
    return Frame.normalized(cols, field)


def write_frame(frame: Frame, path) -> None:
    Path(path).write_text(dumps_frm1(frame), encoding="ascii")


def read_frame(path) -> Frame:
    return loads_frm1(Path(path).read_text(encoding="ascii"))
