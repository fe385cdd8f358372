"""Explicit frame constructions.

Covers regular simplices, Paley and doubling-recursion conference matrices and
the Gram matrices they induce, spectral synthesis of a frame from a Gram
matrix, Alltop-sequence Gabor frames, harmonic (DFT row) frames and random
uniform tight frames.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import matkernel
from .errors import ConvergenceError, SpectrumError
from .frame import COMPLEX, REAL, Frame

SYMMETRIC = "symmetric"
SKEW = "skew"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


@dataclass(frozen=True, eq=False)
class ConferenceMatrix:
    """Zero-diagonal +-1 matrix with C C^T = (N-1) I, checked in integer arithmetic."""

    entries: np.ndarray
    kind: str

    def __post_init__(self):
        c = np.array(self.entries, dtype=np.int64)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError("conference matrix must be square")
        n = c.shape[0]
        if np.any(np.diag(c) != 0):
            raise ValueError("conference matrix needs a zero diagonal")
        off = c[~np.eye(n, dtype=bool)]
        if not np.all(np.abs(off) == 1):
            raise ValueError("off-diagonal entries must be +-1")
        if not np.array_equal(c @ c.T, (n - 1) * np.eye(n, dtype=np.int64)):
            raise ValueError("C C^T != (N-1) I")
        if self.kind == SYMMETRIC and not np.array_equal(c, c.T):
            raise ValueError("symmetric conference matrix is not symmetric")
        if self.kind == SKEW and not np.array_equal(c, -c.T):
            raise ValueError("skew conference matrix is not skew-symmetric")
        if self.kind not in (SYMMETRIC, SKEW):
            raise ValueError(f"unknown kind {self.kind!r}")
        c.setflags(write=False)
        object.__setattr__(self, "entries", c)

    @property
    def order(self) -> int:
        return self.entries.shape[0]


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _paley_orders_near(n: int, count: int = 3) -> list[int]:
    valid = [p + 1 for p in range(5, 4 * n + 50) if p % 4 == 1 and is_prime(p)]
    return sorted(valid, key=lambda v: (abs(v - n), v))[:count]


def paley_conference(n: int) -> ConferenceMatrix:
    """Symmetric conference matrix of order N = p + 1, p prime, p = 1 (mod 4).

    Rows and columns are indexed by {inf} followed by GF(p) = 0..p-1;
    C[inf, x] = C[x, inf] = 1 and C[x, y] = legendre(x - y).
    """
    p = n - 1
    if not (is_prime(p) and p % 4 == 1):
        raise ValueError(
            f"Paley order needs N-1 prime and = 1 (mod 4); N={n} is not. "
            f"Nearby valid orders: {_paley_orders_near(n)}"
        )
    c = np.zeros((n, n), dtype=np.int64)
    c[0, 1:] = 1
    c[1:, 0] = 1
    for x in range(p):
        for y in range(p):
            c[x + 1, y + 1] = _legendre(x - y, p)
    return ConferenceMatrix(c, SYMMETRIC)


def skew_conference(n: int) -> ConferenceMatrix:
    """Skew-symmetric conference matrix of order N = 2^k via the doubling recursion."""
    if n < 2 or n & (n - 1):
        raise ValueError(f"skew conference order must be a power of two >= 2, got {n}")
    c = np.array([[0, -1], [1, 0]], dtype=np.int64)
    while c.shape[0] < n:
        eye = np.eye(c.shape[0], dtype=np.int64)
        c = np.block([[c, c - eye], [c + eye, -c]])
    return ConferenceMatrix(c, SKEW)


def _check_two_eigenvalues(lam: np.ndarray, m: int, tol: float) -> None:
    n = lam.size
    top = n / m
    bad_top = np.abs(lam[:m] - top) > tol
    bad_zero = np.abs(lam[m:]) > tol
    if bad_top.any() or bad_zero.any():
        raise SpectrumError(
            f"Gram spectrum must be {top:g} (x{m}) and 0 (x{n - m}); "
            f"offending eigenvalues: {np.concatenate([lam[:m][bad_top], lam[m:][bad_zero]]).tolist()}"
        )


def conference_to_gram(conf: ConferenceMatrix) -> np.ndarray:
    """Gram matrix I + aC (symmetric) or I + i aC (skew) with a = 1/sqrt(N-1)."""
    n = conf.order
    if n % 2:
        raise ValueError("conference order must be even")
    alpha = 1.0 / math.sqrt(n - 1)
    c = conf.entries.astype(float)
    if conf.kind == SYMMETRIC:
        r = np.eye(n) + alpha * c
    else:
        r = np.eye(n) + 1j * alpha * c
    _check_two_eigenvalues(matkernel.hermitian_eig(r).eigenvalues, n // 2, 1e-8)
    return np.asarray(r, dtype=np.complex128)


def gram_to_frame(r, m: int) -> Frame:
    """Synthesize a uniform tight frame in E^m whose Gram matrix is ``r``.

    The columns are sqrt(N/m) times the rows of the leading m eigenvectors, so
    ``gram(frame) == r`` with the package's inner product. The result is only
    determined up to a unitary acting on E^m. A real ``r`` gives a real frame.
    """
    r = matkernel.as_matrix(r)
    n = r.shape[0]
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= N, got m={m}, N={n}")
    if np.max(np.abs(np.diag(r) - 1.0)) > 1e-12:
        raise ValueError("Gram matrix must have unit diagonal")
    ed = matkernel.hermitian_eig(r)
    _check_two_eigenvalues(ed.eigenvalues, m, 1e-8)
    f = math.sqrt(n / m) * ed.eigenvectors[:, :m].T
    if np.all(r.imag == 0.0):
        return Frame.normalized(f.real, REAL)
    return Frame.normalized(f, COMPLEX)


def simplex_frame(m: int) -> Frame:
    """m + 1 unit vectors in R^m with pairwise inner products -1/m.

    Coordinates come from the Helmert basis of the sum-zero hyperplane of
    R^(m+1), so no eigensolve is needed.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    h = np.zeros((m, m + 1))
    for j in range(1, m + 1):
        h[j - 1, :j] = 1.0
        h[j - 1, j] = -j
        h[j - 1] /= math.sqrt(j * (j + 1))
    return Frame.normalized(math.sqrt((m + 1) / m) * h, REAL)


def orthonormal_basis(m: int, field: str = REAL) -> Frame:
    return Frame(np.eye(m), field)


def _unit_phases(exponents: np.ndarray, modulus: int) -> np.ndarray:
    return np.exp(2j * np.pi * (np.mod(exponents, modulus) / modulus))


def alltop_gabor(m: int, append_onb: bool = False) -> Frame:
    """Gabor frame of the Alltop sequence g(n) = exp(2 pi i n^3 / m), m prime >= 5.

    Column k*m + l is (1/sqrt m) g(n - k) exp(2 pi i l n / m), index arithmetic
    mod m. With ``append_onb`` the standard basis is appended (N = m^2 + m).
    """
    if m < 5 or not is_prime(m):
        raise ValueError(f"Alltop frames need a prime m >= 5, got {m}")
    n = np.arange(m)
    k = n[:, None, None]
    l = n[None, :, None]
    t = n[None, None, :]
    expo = (t - k) ** 3 + l * t
    cols = _unit_phases(expo, m).reshape(m * m, m).T / math.sqrt(m)
    if append_onb:
        cols = np.hstack([cols, np.eye(m)])
    return Frame.normalized(cols, COMPLEX)


def harmonic_frame(m: int, n: int, rows) -> Frame:
    """Columns f_k(j) = exp(2 pi i rows[j] k / N) / sqrt(m) of a row-selected DFT."""
    rows = [int(r) for r in rows]
    if m > n:
        raise ValueError(f"need m <= N, got m={m}, N={n}")
    if len(rows) != m:
        raise ValueError(f"need exactly m={m} rows, got {len(rows)}")
    if len(set(rows)) != m:
        raise ValueError(f"rows must be distinct: {rows}")
    if any(r < 0 or r >= n for r in rows):
        raise ValueError(f"rows must lie in 0..{n - 1}: {rows}")
    expo = np.outer(rows, np.arange(n))
    return Frame.normalized(_unit_phases(expo, n) / math.sqrt(m), COMPLEX)


@dataclass(frozen=True)
class DifferenceSetSpec:
    modulus: int
    residues: tuple[int, ...]

    def __post_init__(self):
        res = tuple(int(r) for r in self.residues)
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if len(set(res)) != len(res):
            raise ValueError(f"residues must be distinct: {res}")
        if any(r < 0 or r >= self.modulus for r in res):
            raise ValueError(f"residues must lie in 0..{self.modulus - 1}")
        object.__setattr__(self, "residues", res)

    @property
    def m(self) -> int:
        return len(self.residues)

    @classmethod
    def parse(cls, text: str) -> "DifferenceSetSpec":
        """Parse ``'v:d1,d2,...'`` such as ``'7:1,2,4'``."""
        try:
            v, ds = text.split(":")
            return cls(int(v), tuple(int(d) for d in ds.split(",")))
        except ValueError as exc:
            raise ValueError(f"bad difference set {text!r}; expected 'v:d1,d2,...'") from exc

    def is_difference_set(self) -> bool:
        """True if every non-zero residue occurs equally often as a difference."""
        v = self.modulus
        counts = np.zeros(v, dtype=int)
        for a, b in itertools.permutations(self.residues, 2):
            counts[(a - b) % v] += 1
        return bool(np.all(counts[1:] == counts[1])) if v > 1 else True


def difference_set_frame(spec: DifferenceSetSpec) -> Frame:
    return harmonic_frame(spec.m, spec.modulus, spec.residues)


def find_difference_set(v: int, k: int, max_candidates: int = 200_000) -> DifferenceSetSpec | None:
    """Brute-force search for a cyclic (v, k, lambda) difference set containing 0 and 1."""
    if k < 2 or k >= v or (k * (k - 1)) % (v - 1):
        return None
    if math.comb(v - 2, k - 2) > max_candidates:
        return None
    for rest in itertools.combinations(range(2, v), k - 2):
        spec = DifferenceSetSpec(v, (0, 1, *rest))
        if spec.is_difference_set():
            return spec
    return None


def random_uniform_tight(
    m: int, n: int, seed: int, field: str = COMPLEX, max_iter: int = 10_000, tol: float = 1e-10
) -> Frame:
    """Random uniform tight frame by alternating projections.

    Starting from Gaussian columns, alternate between the nearest tight frame
    ``sqrt(N/m) S^{-1/2} F`` and column normalization until both the
    tightness and the uniformity residual drop below ``tol``.
    """
    if m < 1 or n < m:
        raise ValueError(f"need N >= m >= 1, got m={m}, N={n}")
    rng = np.random.default_rng(seed)
    f = rng.standard_normal((m, n))
    if field == COMPLEX:
        f = f + 1j * rng.standard_normal((m, n))
    f = f / np.linalg.norm(f, axis=0)
    a = n / m
    for _ in range(max_iter):
        f = math.sqrt(a) * (matkernel.inv_sqrt(f @ f.conj().T) @ f)
        norms = np.linalg.norm(f, axis=0)
        f = f / norms
        if field == REAL:
            f = f.real
        uniform_res = np.max(np.abs(norms - 1.0))
        tight_res = np.linalg.norm(f @ f.conj().T - a * np.eye(m)) / a
        if uniform_res < tol and tight_res < tol:
            return Frame.normalized(f, field)
    raise ConvergenceError(f"random_uniform_tight(m={m}, N={n}, seed={seed}) did not converge; retry with another seed")


def best_known(m: int, n: int, field: str) -> Frame | None:
    """The best explicit construction for (m, N, field), if the catalogue has one."""
    if n == m:
        return orthonormal_basis(m, field)
    if n == m + 1:
        return simplex_frame(m)
    if n == 2 * m:
        p = n - 1
        if is_prime(p) and p % 4 == 1:
            return gram_to_frame(conference_to_gram(paley_conference(n)), m)
        if field == COMPLEX and n & (n - 1) == 0:
            return gram_to_frame(conference_to_gram(skew_conference(n)), m)
    if field == COMPLEX:
        spec = find_difference_set(n, m)
        if spec is not None:
            return difference_set_frame(spec)
        if n == m * m and m >= 5 and is_prime(m):
            return alltop_gabor(m)
    return None
