"""Gaussian Gabor systems on 2-D time-frequency lattices.

For the normalized Gaussian phi(t) = 2^{1/4} exp(-pi t^2) the correlation with
its time-frequency shift by (x, omega) has modulus exp(-pi (x^2 + omega^2) / 2).
It is radial and decreasing, so the largest correlation within a lattice Gabor
system is attained at a shortest non-zero lattice vector.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .matkernel import singular_values


def gaussian_correlation(x, omega):
    """|<phi, M_omega T_x phi>| for the unit-norm Gaussian (scalar or array)."""
    x = np.asarray(x, dtype=float)
    omega = np.asarray(omega, dtype=float)
    out = np.exp(-0.5 * math.pi * (x * x + omega * omega))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class Lattice2D:
    generator: np.ndarray

    def __post_init__(self):
        g = np.array(self.generator, dtype=float)
        if g.shape != (2, 2) or not np.all(np.isfinite(g)):
            raise ValueError("lattice generator must be a finite 2x2 matrix")
        if np.linalg.det(g) == 0.0:
            raise ValueError("lattice generator is singular")
        g.setflags(write=False)
        object.__setattr__(self, "generator", g)

    @property
    def volume(self) -> float:
        return abs(float(np.linalg.det(self.generator)))

    @property
    def redundancy(self) -> float:
        return 1.0 / self.volume


def hexagonal_lattice(rho: float) -> Lattice2D:
    """Hexagonal lattice of redundancy rho (volume 1/rho)."""
    if not rho > 0:
        raise ValueError(f"redundancy must be positive, got {rho}")
    q = 3.0 ** 0.25
    return Lattice2D(
        np.array(
            [
                [math.sqrt(2.0) / (q * math.sqrt(rho)), 1.0 / (q * math.sqrt(2.0 * rho))],
                [0.0, q / math.sqrt(2.0 * rho)],
            ]
        )
    )


def square_lattice(rho: float) -> Lattice2D:
    if not rho > 0:
        raise ValueError(f"redundancy must be positive, got {rho}")
    return Lattice2D(np.eye(2) / math.sqrt(rho))


@dataclass(frozen=True)
class LatticeReport:
    shortest_vector: tuple[float, float]
    coefficients: tuple[int, int]
    min_distance: float
    max_correlation: float
    redundancy: float


def enumeration_bound(lattice: Lattice2D) -> int:
    g = lattice.generator
    return math.ceil(singular_values(g)[0] * singular_values(np.linalg.inv(g))[0]) + 1


def shortest_vector(lattice: Lattice2D, bound: int | None = None) -> LatticeReport:
    """Exhaustive search for min ||L z|| over non-zero integer z with |z_i| <= bound.

    The default bound ||L|| ||L^{-1}|| + 1 always contains a shortest vector,
    since a shortest vector is no longer than either generator column.
    Only one of each pair +-z is visited; ties keep the first found.
    """
    g = lattice.generator
    b = enumeration_bound(lattice) if bound is None else int(bound)
    best = None
    for z1 in range(0, b + 1):
        for z2 in range(-b, b + 1):
            if z1 == 0 and z2 <= 0:
                continue
            v = g @ np.array([z1, z2], dtype=float)
            d2 = float(v @ v)
            if best is None or d2 < best[0] * (1.0 - 1e-12):
                best = (d2, (z1, z2), v)
    d2, z, v = best
    d = math.sqrt(d2)
    return LatticeReport(
        shortest_vector=(float(v[0]), float(v[1])),
        coefficients=z,
        min_distance=d,
        max_correlation=math.exp(-0.5 * math.pi * d2),
        redundancy=lattice.redundancy,
    )


@dataclass(frozen=True)
class LatticeComparison:
    rho: float
    hex_d2: float
    hex_correlation: float
    square_d2: float
    square_correlation: float


def compare_lattices(rhos) -> list[LatticeComparison]:
    """Hexagonal vs square lattice of equal redundancy, one row per rho."""
    rows = []
    for rho in rhos:
        hx = shortest_vector(hexagonal_lattice(rho))
        sq = shortest_vector(square_lattice(rho))
        rows.append(
            LatticeComparison(float(rho), hx.min_distance**2, hx.max_correlation, sq.min_distance**2, sq.max_correlation)
        )
    return rows


LATTICE_CSV_HEADER = ("rho", "hex_d2", "hex_correlation", "square_d2", "square_correlation")


def lattice_csv(rows: list[LatticeComparison]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(LATTICE_CSV_HEADER)
    for r in rows:
        w.writerow([repr(r.rho), repr(r.hex_d2), repr(r.hex_correlation), repr(r.square_d2), repr(r.square_correlation)])
    return buf.getvalue()
