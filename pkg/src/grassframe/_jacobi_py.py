"""Pure numpy fallback for the Jacobi kernel.

Uses the round-robin (parallel) ordering: each round rotates n/2 disjoint
index pairs at once, which turns the inner loop into a handful of vectorised
numpy calls. The rotation formula is identical to the compiled kernel, so the
two backends agree to rounding.
"""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=64)
def _rounds(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    players = list(range(n + (n % 2)))
    size = len(players)
    out = []
    for _ in range(size - 1):
        pairs = [(players[i], players[size - 1 - i]) for i in range(size // 2)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs if a < n and b < n]
        p = np.array([a for a, _ in pairs], dtype=np.intp)
        q = np.array([b for _, b in pairs], dtype=np.intp)
        out.append((p, q))
        players = [players[0], players[-1], *players[1:-1]]
    return tuple(out)


def jacobi_hermitian(a_in, max_sweeps: int, rel_tol: float):
    """Return ``(diag, V, sweeps)``; ``sweeps == -1`` signals no convergence."""
    a = np.array(a_in, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    fro = np.linalg.norm(a)
    if fro == 0.0:
        return np.zeros(n), v, 0
    iu = np.triu_indices(n, 1)
    rounds = _rounds(n)

    for sweep in range(max_sweeps + 1):
        off = np.sqrt(2.0) * np.linalg.norm(a[iu])
        if off <= rel_tol * fro:
            return np.real(np.diag(a)).copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p, q in rounds:
            apq = a[p, q]
            r = np.abs(apq)
            live = r > 0.0
            if not live.any():
                continue
            p, q, apq, r = p[live], q[live], apq[live], r[live]
            e = apq / r
            tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
            t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            se = s * e
            sec = s * np.conj(e)

            x, y = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * x - sec * y
            a[:, q] = se * x + c * y
            x, y = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * x - se[:, None] * y
            a[q, :] = sec[:, None] * x + c[:, None] * y
            a[p, q] = 0.0
            a[q, p] = 0.0
            a[p, p] = a[p, p].real
            a[q, q] = a[q, q].real

            x, y = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * x - sec * y
            v[:, q] = se * x + c * y
    return np.real(np.diag(a)).copy(), v, -1
