"""Numerical search for Grassmannian frames.

The maximal correlation is non-smooth, so each restart minimizes the smoothed
objective

    Phi_p(F) = ( sum_{k<l} |<f_k, f_l>|^{2p} )^{1/(2p)}

for an increasing schedule of p, by projected gradient descent on the product
of unit spheres. Trial steps use the Barzilai-Borwein length and are backtracked
until Phi_p decreases (Armijo), so accepted iterates are monotone within a
stage. The best restart is then refined by a sequential linear-programming
minimax step that acts on the true maximal correlation directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from . import constructions
from .frame import COMPLEX, REAL, Frame, max_correlation, welch_bound

ARMIJO = 1e-4
MIN_STEP = 1e-18
STALL_RTOL = 1e-15


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 32
    p_schedule: tuple[int, ...] = (2, 4, 8, 16, 32, 64)
    max_iters: int = 2000
    grad_tol: float = 1e-10
    seed: int = 0
    polish: bool = True
    polish_iters: int = 200
    use_catalogue: bool = True

    def __post_init__(self):
        sched = tuple(self.p_schedule)
        object.__setattr__(self, "p_schedule", sched)
        if self.restarts < 1 or self.max_iters < 1 or self.polish_iters < 0:
            raise ValueError("restarts and max_iters must be positive")
        if not sched or any(p < 1 for p in sched) or any(b <= a for a, b in zip(sched, sched[1:])):
            raise ValueError(f"p_schedule must be strictly increasing exponents >= 1, got {sched}")
        if self.grad_tol <= 0:
            raise ValueError("grad_tol must be positive")


@dataclass(frozen=True)
class OptimizerResult:
    frame: Frame
    achieved: float
    welch: float
    converged: bool
    restarts_used: int
    best_restart: int
    history: list[float] = field(default_factory=list, repr=False)

    @property
    def gap(self) -> float:
        return self.achieved - self.welch


def smoothed_objective(f: np.ndarray, p: float) -> tuple[float, np.ndarray]:
    """Phi_p and its Euclidean gradient with respect to the columns of ``f``.

    For complex ``f`` the gradient is returned in complex form: its real and
    imaginary parts are the partial derivatives along Re f and Im f. The sum is
    evaluated relative to the largest modulus so that large p does not overflow.
    """
    h = f.conj().T @ f  # h[l, k] = <f_k, f_l>
    a = np.abs(h)
    np.fill_diagonal(a, 0.0)
    top = a.max()
    if top == 0.0:
        return 0.0, np.zeros_like(f)
    u = a / top
    w = u ** (2 * p - 2)
    total = 0.5 * float(np.sum(w * u * u))
    phi = top * total ** (1.0 / (2 * p))
    weights = w * h
    np.fill_diagonal(weights, 0.0)
    grad = (total ** (1.0 / (2 * p) - 1.0) / top) * (f @ weights)
    return phi, grad


def _true_max(f: np.ndarray) -> float:
    a = np.abs(f.conj().T @ f)
    np.fill_diagonal(a, 0.0)
    return float(a.max())


def _normalize(f: np.ndarray) -> np.ndarray:
    return f / np.linalg.norm(f, axis=0)


def _tangent(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    radial = np.real(np.sum(f.conj() * g, axis=0))
    return g - f * radial


def descend(f: np.ndarray, p: float, max_iters: int, grad_tol: float, history: list | None = None):
    """One p-stage of projected gradient descent. Returns ``(f, phi, converged)``."""
    phi, g = smoothed_objective(f, p)
    gt = _tangent(f, g)
    step = 1e-2
    if history is not None:
        history.append(phi)
    for _ in range(max_iters):
        g2 = float(np.vdot(gt, gt).real)
        if math.sqrt(g2) <= grad_tol * max(phi, 1.0) or phi == 0.0:
            return f, phi, True
        while True:
            f_new = _normalize(f - step * gt)
            phi_new, g_new = smoothed_objective(f_new, p)
            if phi_new <= phi - ARMIJO * step * g2:
                break
            step *= 0.5
            if step < MIN_STEP:
                return f, phi, True
        gt_new = _tangent(f_new, g_new)
        s = (f_new - f).ravel()
        y = (gt_new - gt).ravel()
        sy = float(np.vdot(s, y).real)
        stalled = phi_new > phi * (1.0 - STALL_RTOL)
        step = float(np.vdot(s, s).real) / sy if sy > 0 else 2.0 * step
        f, phi, gt = f_new, phi_new, gt_new
        if history is not None:
            history.append(phi)
        if stalled:
            return f, phi, True
    return f, phi, False


def _flat(z: np.ndarray, real: bool) -> np.ndarray:
    return z.real.ravel() if real else np.concatenate([z.real.ravel(), z.imag.ravel()])


def minimax_polish(f: np.ndarray, real: bool, iters: int = 200, band: float = 1e-3) -> np.ndarray:
    """Sequential LP refinement of max_{k<l} |<f_k, f_l>| with a trust region.

    Each step linearizes the near-active correlations, keeps the step tangent
    to the spheres, and accepts only strict decreases of the true maximum.
    """
    m, n = f.shape
    nv = m * n if real else 2 * m * n
    iu = np.triu_indices(n, 1)
    radius = 0.05
    current = _true_max(f)
    if current == 0.0:
        return f
    a_eq = np.zeros((n, nv + 1))
    for k in range(n):
        row = np.zeros((m, n), dtype=complex)
        row[:, k] = f[:, k]
        a_eq[k, :nv] = _flat(row, real)
    for _ in range(iters):
        h = f.conj().T @ f
        mod = np.abs(h)
        cutoff = current - max(4.0 * radius, band)
        pairs = [(k, l) for k, l in zip(*iu) if mod[l, k] >= cutoff and mod[l, k] > 0.0]
        a_ub = np.empty((len(pairs), nv + 1))
        b_ub = np.empty(len(pairs))
        for i, (k, l) in enumerate(pairs):
            g = h[l, k]
            r = abs(g)
            row = np.zeros((m, n), dtype=complex)
            row[:, k] = g * f[:, l] / r
            row[:, l] = np.conj(g) * f[:, k] / r
            a_ub[i, :nv] = _flat(row, real)
            a_ub[i, nv] = -1.0
            b_ub[i] = -r
        for k in range(n):
            col = np.zeros((m, n), dtype=complex)
            col[:, k] = f[:, k]
            a_eq[k, :nv] = _flat(col, real)
        cost = np.zeros(nv + 1)
        cost[-1] = 1.0
        res = linprog(
            cost, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=np.zeros(n),
            bounds=[(-radius, radius)] * nv + [(None, None)], method="highs",
        )
        if res.status != 0:
            radius *= 0.5
        else:
            d = res.x[:nv]
            step = d.reshape(m, n) if real else (d[: m * n] + 1j * d[m * n:]).reshape(m, n)
            f_new = _normalize(f + step)
            if real:
                f_new = f_new.real
            new = _true_max(f_new)
            predicted = current - res.x[-1]
            if new < current:
                if current - new > 0.75 * predicted:
                    radius = min(2.0 * radius, 0.2)
                f, current = f_new, new
            else:
                radius *= 0.25
        if radius < 1e-13:
            break
    return f


def _random_start(rng: np.random.Generator, m: int, n: int, real: bool) -> np.ndarray:
    f = rng.standard_normal((m, n))
    if not real:
        f = f + 1j * rng.standard_normal((m, n))
    return _normalize(f)


def _to_frame(f: np.ndarray, field: str) -> Frame:
    if field == REAL:
        return Frame.normalized(np.real(f), REAL)
    return Frame.normalized(f, COMPLEX)


def _run_schedule(f, cfg: OptimizerConfig, history=None):
    converged = True
    for p in cfg.p_schedule:
        f, _, ok = descend(f, p, cfg.max_iters, cfg.grad_tol, history)
        converged = ok
    return f, converged


def minimize_max_correlation(m: int, n: int, field: str = REAL, config: OptimizerConfig | None = None) -> OptimizerResult:
    """Search for N unit vectors in E^m with small maximal correlation.

    Restart r draws its start from a generator seeded with ``(seed, r)``. When
    the construction catalogue covers (m, N, field), restart 0 starts from that
    construction instead, and the construction itself also competes as a
    candidate, so the result is never worse than the catalogue. The reported
    value is the true maximal correlation of the returned frame.
    """
    cfg = config or OptimizerConfig()
    if field not in (REAL, COMPLEX):
        raise ValueError(f"field must be 'R' or 'C', got {field!r}")
    if m < 1 or n < m:
        raise ValueError(f"need N >= m >= 1, got m={m}, N={n}")
    wb = welch_bound(m, n)
    real = field == REAL
    if n == m:
        basis = constructions.orthonormal_basis(m, field)
        return OptimizerResult(basis, 0.0, 0.0, True, 0, 0)

    seeded = constructions.best_known(m, n, field) if cfg.use_catalogue else None
    # (value, restart index, frame array, converged)
    candidates = []
    if seeded is not None:
        start = seeded.vectors.real.copy() if real else seeded.vectors.copy()
        candidates.append((_true_max(start), 0, start, True))
    for r in range(cfg.restarts):
        if r == 0 and seeded is not None:
            f0 = seeded.vectors.real.copy() if real else seeded.vectors.copy()
        else:
            f0 = _random_start(np.random.default_rng([cfg.seed, r]), m, n, real)
        f, ok = _run_schedule(f0, cfg)
        candidates.append((_true_max(f), r, f, ok))

    value, index, best, converged = min(candidates, key=lambda c: (c[0], c[1]))
    if cfg.polish:
        best = minimax_polish(best, real, cfg.polish_iters)
    frame = _to_frame(best, field)
    achieved = max_correlation(frame)
    return OptimizerResult(frame, achieved, wb, converged, cfg.restarts, index)


def gradient_check(frame: Frame, p: float, h: float = 1e-6) -> float:
    """Max discrepancy between the analytic gradient of Phi_p and central differences.

    Relative to the largest gradient component; 0 when both vanish. Real
    frames are perturbed along real coordinates only.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    real = frame.field == REAL
    f = frame.vectors.real.copy() if real else frame.vectors.copy()
    _, g = smoothed_objective(f, p)
    analytic = _flat(g, real)
    numeric = np.empty_like(analytic)
    parts = [1.0] if real else [1.0, 1j]
    idx = 0
    for unit in parts:
        for i in range(f.shape[0]):
            for k in range(f.shape[1]):
                fp = f.copy()
                fm = f.copy()
                fp[i, k] += h * unit
                fm[i, k] -= h * unit
                numeric[idx] = (smoothed_objective(fp, p)[0] - smoothed_objective(fm, p)[0]) / (2 * h)
                idx += 1
    scale = max(np.max(np.abs(analytic)), np.max(np.abs(numeric)))
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(analytic - numeric)) / scale)
