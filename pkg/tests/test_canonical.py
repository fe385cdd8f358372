import math

import numpy as np
import pytest

from grassframe import constructions as cons
from grassframe.canonical import BoundViolation, canonical_tighten, tighten_penalty, verify_tighten_bound
from grassframe.errors import FrameValidationError
from grassframe.frame import COMPLEX, Frame, frame_operator, max_correlation


def random_uniform(seed, m=3, n=7):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    return Frame(v / np.linalg.norm(v, axis=0), COMPLEX)


def gabor_system(window, shifts, mods):
    """Unit-norm time-frequency shifts M_l T_k g on Z_m for k in shifts, l in mods."""
    m = window.size
    t = np.arange(m)
    g = window / np.linalg.norm(window)
    cols = [np.roll(g, k) * np.exp(2j * np.pi * l * t / m) for k in shifts for l in mods]
    return Frame(np.column_stack(cols), COMPLEX)


def tight_residual(fr):
    rho = fr.n / fr.m
    return np.linalg.norm(frame_operator(fr) - rho * np.eye(fr.m)) / rho


def test_already_tight_is_identity():
    for fr in (cons.difference_set_frame(cons.DifferenceSetSpec(7, (1, 2, 4))), cons.simplex_frame(4)):
        h = canonical_tighten(fr)
        np.testing.assert_allclose(h.vectors, fr.vectors, atol=1e-12)
        rep = verify_tighten_bound(fr)
        assert rep.penalty == pytest.approx(0.0, abs=1e-12)
        assert rep.lhs == pytest.approx(max_correlation(fr), abs=1e-12)
        assert rep.slack >= -1e-12


def test_output_is_tight_and_field_preserved():
    for seed in range(20):
        h = canonical_tighten(random_uniform(seed))
        assert tight_residual(h) <= 1e-9
    rng = np.random.default_rng(0)
    v = rng.standard_normal((3, 6))
    h = canonical_tighten(Frame(v / np.linalg.norm(v, axis=0), "R"))
    assert h.field == "R" and tight_residual(h) <= 1e-9


def test_perturbed_alltop_window_stays_uniform():
    m = 5
    rng = np.random.default_rng(1)
    t = np.arange(m)
    g = np.exp(2j * np.pi * t**3 / m) * np.exp(2j * np.pi * rng.random(m))
    h = canonical_tighten(gabor_system(g, range(m), range(m)))
    assert h.uniformity_residual <= 1e-9
    assert tight_residual(h) <= 1e-9


def test_non_tight_gabor_system_stays_uniform():
    # shifts by a subgroup of Z_6: the frame operator commutes with the shifts
    rng = np.random.default_rng(2)
    g = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    fr = gabor_system(g, [0, 2, 4], range(6))
    assert tight_residual(fr) > 1e-3
    h = canonical_tighten(fr)
    assert h.uniformity_residual <= 1e-9 and tight_residual(h) <= 1e-9
    rep = verify_tighten_bound(fr)
    assert rep.uniform_after and rep.penalty > 0


def test_random_frame_loses_uniformity():
    reports = [verify_tighten_bound(random_uniform(seed)) for seed in range(10)]
    assert any(not r.uniform_after for r in reports)
    for r in reports:
        assert r.uniform_after == (r.uniformity_residual <= 1e-8)


def test_bound_holds_over_seeds():
    for seed in range(100):
        rep = verify_tighten_bound(random_uniform(seed))
        assert rep.lhs <= rep.rhs + 1e-9
        assert rep.rho == pytest.approx(7 / 3)
        assert rep.lower <= rep.rho <= rep.upper


def test_penalty_formula():
    # 2 max(|1 - sqrt(7/6)|, |1 - sqrt(7/9)|); the second term dominates
    expected = 2 * (1 - math.sqrt(7 / 9))
    assert tighten_penalty(7 / 3, 2.0, 3.0) == pytest.approx(expected, abs=1e-15)
    assert tighten_penalty(7 / 3, 2.0, 3.0) == pytest.approx(0.2361658, abs=1e-7)
    assert tighten_penalty(2.0, 2.0, 2.0) == 0.0


def test_bound_violation_is_assertion():
    assert issubclass(BoundViolation, AssertionError)


def test_non_uniform_output_is_still_a_valid_frame():
    h = canonical_tighten(random_uniform(3))
    assert h.uniformity_residual > 1e-8
    with pytest.raises(FrameValidationError):
        Frame(h.vectors, COMPLEX)
