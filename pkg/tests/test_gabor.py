import math

import numpy as np
import pytest

from grassframe.gabor import (
    LATTICE_CSV_HEADER,
    Lattice2D,
    compare_lattices,
    enumeration_bound,
    gaussian_correlation,
    hexagonal_lattice,
    lattice_csv,
    shortest_vector,
    square_lattice,
)

import oracles

RHOS = (0.5, 1.0, 2.0, 4.0)


def brute_min_norm2(g, bound):
    best = math.inf
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if a or b:
                x = g[0][0] * a + g[0][1] * b
                y = g[1][0] * a + g[1][1] * b
                best = min(best, x * x + y * y)
    return best


def test_gaussian_examples():
    assert gaussian_correlation(0.0, 0.0) == 1.0
    assert gaussian_correlation(1.0, 0.0) == pytest.approx(0.20788, abs=1e-5)
    assert gaussian_correlation(1.0, 0.0) == pytest.approx(math.exp(-math.pi / 2), abs=1e-15)


def test_gaussian_vectorized():
    out = gaussian_correlation(np.array([0.0, 1.0]), np.array([0.0, 0.0]))
    assert out.shape == (2,)


def test_rotation_invariance():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        x, w = rng.uniform(-3, 3, size=2)
        th = rng.uniform(0, 2 * math.pi)
        xr = math.cos(th) * x - math.sin(th) * w
        wr = math.sin(th) * x + math.cos(th) * w
        assert abs(gaussian_correlation(x, w) - gaussian_correlation(xr, wr)) <= 1e-12


def test_matches_quadrature_oracle():
    rng = np.random.default_rng(1)
    pts = rng.uniform(-2.5, 2.5, size=(50, 2))
    for x, w in pts:
        assert abs(gaussian_correlation(x, w) - oracles.ambiguity_modulus(x, w)) <= 1e-8


def test_quadrature_oracle_self_check():
    assert oracles.ambiguity_modulus(0.0, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_hexagonal_generator_entries():
    q = 3 ** 0.25
    for rho in RHOS:
        expected = [
            [math.sqrt(2) / (q * math.sqrt(rho)), 1 / (q * math.sqrt(2 * rho))],
            [0.0, q / math.sqrt(2 * rho)],
        ]
        g = hexagonal_lattice(rho).generator
        assert np.max(np.abs(g - np.array(expected))) <= 1e-12
        assert abs(g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0] - 1 / rho) <= 1e-12
        assert abs(hexagonal_lattice(rho).volume * rho - 1) <= 1e-12
    np.testing.assert_allclose(hexagonal_lattice(1.0).generator, [[1.07457, 0.53728], [0, 0.93060]], atol=1e-5)


@pytest.mark.parametrize("rho", RHOS)
def test_hexagonal_first_column_is_shortest(rho):
    lat = hexagonal_lattice(rho)
    rep = shortest_vector(lat)
    assert rep.min_distance == pytest.approx(np.linalg.norm(lat.generator[:, 0]), abs=1e-12)


def test_shortest_vector_examples():
    rep = shortest_vector(Lattice2D(np.eye(2)))
    assert rep.min_distance == 1.0 and rep.shortest_vector in ((1.0, 0.0), (0.0, 1.0))
    assert shortest_vector(hexagonal_lattice(1.0)).min_distance ** 2 == pytest.approx(2 / math.sqrt(3), abs=1e-12)
    assert shortest_vector(square_lattice(2.0)).min_distance ** 2 == pytest.approx(0.5, abs=1e-12)


def test_over_search():
    rng = np.random.default_rng(2)
    lats = [hexagonal_lattice(r) for r in RHOS] + [square_lattice(r) for r in RHOS]
    for _ in range(30):
        g = rng.standard_normal((2, 2))
        if abs(np.linalg.det(g)) > 0.1:
            lats.append(Lattice2D(g))
    for lat in lats:
        rep = shortest_vector(lat)
        b = enumeration_bound(lat)
        g = lat.generator.tolist()
        assert rep.min_distance ** 2 <= brute_min_norm2(g, 2 * b) * (1 + 1e-12)
        assert 0 < rep.max_correlation < 1
        assert rep.max_correlation == pytest.approx(math.exp(-math.pi * rep.min_distance**2 / 2))


def test_compare_examples():
    rows = {r.rho: r for r in compare_lattices([1.0, 2.0])}
    assert rows[2.0].hex_correlation == pytest.approx(math.exp(-math.pi / (2 * math.sqrt(3))), abs=1e-12)
    assert rows[2.0].hex_correlation == pytest.approx(0.40380, abs=1e-4)
    assert rows[2.0].square_correlation == pytest.approx(math.exp(-math.pi / 4), abs=1e-12)
    assert rows[1.0].hex_correlation == pytest.approx(math.exp(-math.pi / math.sqrt(3)), abs=1e-12)
    assert rows[1.0].square_correlation == pytest.approx(math.exp(-math.pi / 2), abs=1e-12)


def test_hexagonal_beats_square_and_monotone():
    rows = compare_lattices(RHOS)
    for r in rows:
        assert r.hex_correlation < r.square_correlation
    hexes = [r.hex_correlation for r in rows]
    squares = [r.square_correlation for r in rows]
    assert hexes == sorted(hexes) and squares == sorted(squares)


def test_lattice_validation():
    with pytest.raises(ValueError):
        Lattice2D(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        Lattice2D(np.eye(3))
    with pytest.raises(ValueError):
        hexagonal_lattice(0.0)
    with pytest.raises(ValueError):
        square_lattice(-1.0)


def test_lattice_csv():
    text = lattice_csv(compare_lattices([1.0]))
    lines = text.splitlines()
    assert lines[0] == ",".join(LATTICE_CSV_HEADER)
    vals = [float(x) for x in lines[1].split(",")]
    assert vals[0] == 1.0 and vals[1] == pytest.approx(2 / math.sqrt(3))
