import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twoaxis.model import Sector, sector_of_equal_spin
from twoaxis.recurrence import build_matrix, solve_spectrum

K16_LEVELS = [132.862, 110.346, 89.3684, 69.9638, 52.189, 36.145, 22.032, 10.114]


def test_kappa1_matrix():
    m = build_matrix(Sector(1, 0, 0))
    assert list(m.sub) == [1] and list(m.sup) == [1]
    np.testing.assert_allclose(solve_spectrum(m).v0s, [-1, 1], atol=1e-14)


def test_kappa2_matrix():
    m = build_matrix(Sector(2, 0, 0))
    assert list(m.sup) == [1, 4] and list(m.sub) == [4, 1]
    a = m.dense()
    # characteristic polynomial l (l^2 - 8)
    np.testing.assert_allclose(np.poly(a), [1, 0, -8, 0], atol=1e-12)
    r = 2 * np.sqrt(2)
    np.testing.assert_allclose(solve_spectrum(m).v0s, [-r, 0, r], atol=1e-13)


def test_kappa0():
    sol = solve_spectrum(build_matrix(Sector(0, 3, 1)))
    assert sol.v0s.tolist() == [0.0]
    assert sol.vectors.shape == (1, 1)


def test_k4_mu3():
    sol = solve_spectrum(build_matrix(sector_of_equal_spin(4, 3)))
    np.testing.assert_allclose(sol.v0s, [-4, 4], atol=1e-13)


def test_k16_column():
    v = solve_spectrum(build_matrix(sector_of_equal_spin(16, 0))).v0s
    expected = sorted([-x for x in K16_LEVELS] + [0.0] + K16_LEVELS)
    np.testing.assert_allclose(v, expected, atol=5e-4)


def test_monic_gauge_and_residual():
    sol = solve_spectrum(build_matrix(Sector(10, 2, 5)))
    np.testing.assert_array_equal(sol.vectors[-1], 1.0)
    assert sol.residuals().max() < 1e-11


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 24), st.integers(0, 6), st.integers(0, 6))
def test_symmetric_path_matches_dense_path(kappa, mu1, mu2):
    m = build_matrix(Sector(kappa, mu1, mu2))
    a, b = solve_spectrum(m), solve_spectrum(m, force_dense=True)
    scale = max(1.0, np.abs(a.v0s).max())
    assert np.abs(a.v0s - b.v0s).max() <= 1e-9 * scale


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 30), st.integers(0, 8), st.integers(0, 8))
def test_eigenvalues_match_matrix_and_sign_symmetry(kappa, mu1, mu2):
    m = build_matrix(Sector(kappa, mu1, mu2))
    sol = solve_spectrum(m)
    ref = np.sort(-np.linalg.eigvals(m.dense().astype(float)).real)
    scale = max(1.0, np.abs(ref).max())
    assert np.abs(sol.v0s - ref).max() <= 1e-8 * scale
    assert np.abs(sol.v0s + sol.v0s[::-1]).max() <= 1e-10 * scale


def test_linear_van_vleck_constant():
    sol = solve_spectrum(build_matrix(Sector(3, 1, 2)))
    assert sol.v1 == 3 * (2 + 3)
