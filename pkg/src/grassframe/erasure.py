"""Frame coefficients sent over an erasure channel with additive noise.

The data vector f is encoded as y = T f (T the N x m analysis matrix), some
coefficients are lost, and noise is added at the receiver: y~ = Q y + eps.

The "condition number of the frame operator" reported in erasure sweeps is
sigma_max / sigma_min of the surviving analysis matrix T_R. For a uniform
tight (3, 7) frame with one erasure, T_R* T_R = (7/3) I - f f* has eigenvalues
7/3, 7/3, 4/3, so this ratio is sqrt(7)/2 = 1.3229. The condition number of
T_R* T_R itself would be 1.75.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import matkernel
from .errors import RankDeficientError
from .frame import Frame, analysis_matrix, gram


@dataclass(frozen=True)
class ErasurePattern:
    n: int
    erased: frozenset[int]

    def __init__(self, n: int, erased=()):
        erased = frozenset(int(k) for k in erased)
        if any(k < 0 or k >= n for k in erased):
            raise ValueError(f"erased indices must lie in 0..{n - 1}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "erased", erased)

    @property
    def surviving(self) -> list[int]:
        return [k for k in range(self.n) if k not in self.erased]


def erasure_matrices(n: int, pattern: ErasurePattern) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal erasure matrix Q (1 on survivors) and P = I - Q."""
    if pattern.n != n:
        raise ValueError(f"pattern is for N={pattern.n}, not {n}")
    q = np.zeros((n, n))
    idx = pattern.surviving
    q[idx, idx] = 1.0
    return q, np.eye(n) - q


def matched_filter(frame: Frame, ytilde) -> np.ndarray:
    """(m/N) T* y~."""
    y = np.asarray(ytilde, dtype=np.complex128)
    if y.shape != (frame.n,):
        raise ValueError(f"expected {frame.n} coefficients, got shape {y.shape}")
    return (frame.m / frame.n) * (frame.vectors @ y)


def mmse_receiver(frame: Frame, pattern: ErasurePattern, ytilde, sigma: float) -> np.ndarray:
    """(T_R* T_R + sigma^2 I)^{-1} T_R* y~_R.

    ``ytilde`` may hold only the surviving coefficients (in index order) or all
    N; in the latter case the erased entries are ignored.
    """
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    keep = pattern.surviving
    y = np.asarray(ytilde, dtype=np.complex128)
    if y.shape == (frame.n,) and len(keep) != frame.n:
        y = y[keep]
    if y.shape != (len(keep),):
        raise ValueError(f"expected {len(keep)} surviving coefficients, got shape {y.shape}")
    t_r = analysis_matrix(frame)[keep]
    normal = t_r.conj().T @ t_r + sigma**2 * np.eye(frame.m)
    if not keep:
        if sigma == 0:
            raise RankDeficientError("every coefficient was erased")
        return np.zeros(frame.m, dtype=np.complex128)
    try:
        inv = matkernel.inv_hermitian(normal)
    except RankDeficientError as exc:
        raise RankDeficientError(f"surviving vectors {keep} do not span; frame not robust to this pattern") from exc
    return inv @ (t_r.conj().T @ y)


@dataclass(frozen=True)
class ChannelConfig:
    sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not self.sigma >= 0:
            raise ValueError("sigma must be >= 0")


def awgn_transmit(frame: Frame, f, pattern: ErasurePattern, cfg: ChannelConfig) -> np.ndarray:
    """y~ = Q T f + eps, eps circular complex Gaussian with per-component variance sigma^2."""
    f = np.asarray(f, dtype=np.complex128)
    q, _ = erasure_matrices(frame.n, pattern)
    y = q @ (analysis_matrix(frame) @ f)
    if cfg.sigma > 0:
        rng = np.random.default_rng(cfg.seed)
        noise = rng.standard_normal(frame.n) + 1j * rng.standard_normal(frame.n)
        y = y + (cfg.sigma / math.sqrt(2.0)) * noise
    return y


@dataclass(frozen=True)
class ErasureReport:
    erasures: int
    pattern_count: int
    mean_cond: float
    max_cond: float
    failures: int


def pattern_conditions(frame: Frame, e: int) -> list[tuple[tuple[int, ...], float | None]]:
    """cond(T_R) for every e-subset of erased indices; None where T_R is rank deficient."""
    if not 0 <= e < frame.n:
        raise ValueError(f"need 0 <= e < N={frame.n}, got {e}")
    t = analysis_matrix(frame)
    out = []
    for erased in itertools.combinations(range(frame.n), e):
        keep = [k for k in range(frame.n) if k not in erased]
        try:
            out.append((erased, matkernel.condition_number(t[keep])))
        except RankDeficientError:
            out.append((erased, None))
    return out


def condition_sweep(frame: Frame, e: int) -> ErasureReport:
    """Mean and max of cond(T_R) over all C(N, e) erasure patterns."""
    conds = pattern_conditions(frame, e)
    good = sorted(c for _, c in conds if c is not None)
    failures = len(conds) - len(good)
    mean = math.fsum(good) / len(good) if good else math.nan
    top = good[-1] if good else math.nan
    return ErasureReport(e, len(conds), mean, top, failures)


ERASURE_CSV_HEADER = ("e", "pattern_count", "mean_cond", "max_cond", "failures")


def erasure_csv(reports: list[ErasureReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ERASURE_CSV_HEADER)
    for r in reports:
        w.writerow([r.erasures, r.pattern_count, repr(r.mean_cond), repr(r.max_cond), r.failures])
    return buf.getvalue()


@dataclass(frozen=True)
class ErrorBoundReport:
    trials: int
    max_error: float
    bound: float
    min_slack: float
    norm_tpt: float
    norm_pt_pt: float
    norm_ptt_p: float
    row_sum_bound: float

    @property
    def identity_gap(self) -> float:
        return max(abs(self.norm_tpt - self.norm_pt_pt), abs(self.norm_tpt - self.norm_ptt_p))

    @property
    def row_sum_slack(self) -> float:
        return self.row_sum_bound - self.norm_ptt_p


def matched_error_bound_check(frame: Frame, pattern: ErasurePattern, trials: int = 100, seed: int = 0) -> ErrorBoundReport:
    """Check the noiseless matched-filter error bound and the operator-norm chain.

    For random unit f: ||f - (m/N) T* Q T f|| <= (m/N) ||T* P T||_2. Also
    computes ||T*PT||, ||(PT)*(PT)||, ||P T T* P|| (all equal) and the
    max-row-sum bound max_{k in E} sum_{l in E} |<f_k, f_l>|.
    """
    q, p = erasure_matrices(frame.n, pattern)
    t = analysis_matrix(frame)
    scale = frame.m / frame.n
    tpt = t.conj().T @ p @ t
    pt = p @ t
    norm_tpt = matkernel.spectral_norm(tpt)
    norm_pt_pt = matkernel.spectral_norm(pt.conj().T @ pt)
    norm_ptt_p = matkernel.spectral_norm(p @ t @ t.conj().T @ p)
    erased = sorted(pattern.erased)
    g = np.abs(gram(frame))
    row_sum = float(max(g[k, erased].sum() for k in erased)) if erased else 0.0
    bound = scale * norm_tpt
    max_err = 0.0
    min_slack = math.inf
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        f = rng.standard_normal(frame.m) + 1j * rng.standard_normal(frame.m)
        f /= np.linalg.norm(f)
        err = float(np.linalg.norm(f - scale * (frame.vectors @ (q @ (t @ f)))))
        max_err = max(max_err, err)
        min_slack = min(min_slack, bound - err)
    return ErrorBoundReport(trials, max_err, bound, min_slack, norm_tpt, norm_pt_pt, norm_ptt_p, row_sum)
