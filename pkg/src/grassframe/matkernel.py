"""Dense complex matrix kernel: Hermitian eigendecomposition and what builds on it.

The eigensolver is a cyclic Jacobi method. A compiled Cython version is used
when the extension was built; otherwise a vectorised numpy implementation is
selected at import. Set ``GRASSFRAME_PURE_PYTHON=1`` to force the fallback.

Inner products follow ``<x, y> = sum_i x_i * conj(y_i)`` everywhere in the
package.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _jacobi_py
from .errors import ConvergenceError, RankDeficientError

if os.environ.get("GRASSFRAME_PURE_PYTHON", "") not in ("", "0"):
    _backend = _jacobi_py
    BACKEND = "python"
else:
    try:
        from . import _jacobi as _backend  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _backend = _jacobi_py
        BACKEND = "python"

MAX_SWEEPS = 100
OFF_DIAGONAL_TOL = 1e-14
HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in descending order with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        w = self.eigenvectors
        return (w * self.eigenvalues) @ w.conj().T


def as_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def _check_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    n, k = a.shape
    if n != k:
        raise ValueError(f"matrix must be square, got {n}x{k}")
    if n == 0:
        raise ValueError("matrix must be at least 1x1")
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.conj().T) > tol * max(scale, np.finfo(float).tiny):
        raise ValueError("matrix is not Hermitian within tolerance")


def hermitian_eig(a, *, kernel=None) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    ``kernel`` selects a backend module explicitly (used by tests and the
    benchmark); by default the import-time choice is used.
    """
    a = as_matrix(a)
    _check_hermitian(a)
    a = 0.5 * (a + a.conj().T)
    kern = _backend if kernel is None else kernel
    diag, vecs, sweeps = kern.jacobi_hermitian(a, MAX_SWEEPS, OFF_DIAGONAL_TOL)
    if sweeps < 0:
        raise ConvergenceError(
            f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps (n={a.shape[0]}); "
            "input is likely ill-conditioned"
        )
    order = np.argsort(-diag, kind="stable")
    return EigenDecomposition(np.ascontiguousarray(diag[order]), np.ascontiguousarray(vecs[:, order]))


def singular_values(a) -> np.ndarray:
    """Singular values, descending, as square roots of the eigenvalues of A*A.

    For wide matrices the smaller Gram ``A A*`` is used, so ``min(rows, cols)``
    values are returned.
    """
    a = as_matrix(a)
    g = a.conj().T @ a if a.shape[0] >= a.shape[1] else a @ a.conj().T
    lam = hermitian_eig(g).eigenvalues
    return np.sqrt(np.clip(lam, 0.0, None))


def condition_number(a, rank_tol: float = 1e-12) -> float:
    """sigma_max / sigma_min; requires full column rank."""
    a = as_matrix(a)
    rows, cols = a.shape
    if rows < cols:
        raise RankDeficientError(f"{rows}x{cols} matrix cannot have full column rank")
    s = singular_values(a)
    if s[0] == 0.0 or s[-1] <= rank_tol * s[0]:
        raise RankDeficientError(f"matrix is rank deficient (sigma_min/sigma_max = {s[-1] / s[0] if s[0] else 0.0:.3e})")
    return float(s[0] / s[-1])


def _positive_definite_eig(a, what: str) -> EigenDecomposition:
    ed = hermitian_eig(a)
    lam = ed.eigenvalues
    if lam[0] <= 0.0 or lam[-1] < 1e-12 * lam[0]:
        raise RankDeficientError(f"{what}: matrix is singular or indefinite (eigenvalues {lam[-1]:.3e} .. {lam[0]:.3e})")
    return ed


def inv_sqrt(a) -> np.ndarray:
    """Hermitian inverse square root of a positive definite matrix."""
    ed = _positive_definite_eig(a, "inv_sqrt")
    w = ed.eigenvectors
    b = (w / np.sqrt(ed.eigenvalues)) @ w.conj().T
    return 0.5 * (b + b.conj().T)


def inv_hermitian(a) -> np.ndarray:
    """Inverse of a Hermitian positive definite matrix via its eigendecomposition."""
    ed = _positive_definite_eig(a, "inv_hermitian")
    w = ed.eigenvectors
    b = (w / ed.eigenvalues) @ w.conj().T
    return 0.5 * (b + b.conj().T)


def spectral_norm(a) -> float:
    return float(singular_values(a)[0])
