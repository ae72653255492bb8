from dataclasses import replace

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from twoaxis.errors import DomainError, InvariantViolation
from twoaxis.model import Sector, sector_of_equal_spin
from twoaxis.polynomial import (HSPolynomial, bae_residual, bae_residuals,
                                elementary_symmetric, energy_from_coeffs,
                                energy_from_roots, find_roots, fuchsian_residual,
                                polynomial_from_solution, symmetric_functions)
from twoaxis.recurrence import build_matrix, solve_spectrum

HALF = Sector(1, 0, 0)


def poly(sector, eta):
    return polynomial_from_solution(solve_spectrum(build_matrix(sector)), eta)


def handmade(coeffs, v0, sector=HALF):
    return HSPolynomial(np.array(coeffs, float), v0, sector.kappa * (sector.mu2 + sector.kappa),
                        sector, 1)


def test_k1_ground_polynomial():
    p = poly(sector_of_equal_spin(1, 0), 1)
    np.testing.assert_allclose(p.coeffs, [1, 1], atol=1e-14)
    assert p.v0 == pytest.approx(-1)


def test_k4_mu2_middle_polynomial():
    p = poly(sector_of_equal_spin(4, 2), 2)
    np.testing.assert_allclose(p.coeffs, [-1, 0, 1], atol=1e-13)
    assert abs(p.v0) < 1e-13


def test_k3_ground_roots():
    r = find_roots(poly(sector_of_equal_spin(3, 0), 1)).roots
    np.testing.assert_allclose(r, [-4.3771, -1, -0.2285], atol=5e-5)


def test_eta_out_of_range():
    sol = solve_spectrum(build_matrix(HALF))
    with pytest.raises(DomainError):
        polynomial_from_solution(sol, 3)


def test_find_roots_factored():
    r = find_roots(handmade([-1, 0, 1], 0.0, sector_of_equal_spin(4, 2))).roots
    np.testing.assert_allclose(r, [-1, 1], atol=1e-14)


def test_k2_ground_roots_closed_form():
    x = sympy.symbols("x")
    # the kappa = 2 ground state polynomial is (x + sqrt2 + 1)(x + sqrt2 - 1)
    exact = sorted(float(r) for r in sympy.solve(sympy.expand(
        (x + sympy.sqrt(2) + 1) * (x + sympy.sqrt(2) - 1)), x))
    r = find_roots(poly(sector_of_equal_spin(2, 0), 1)).roots
    np.testing.assert_allclose(r, exact, rtol=1e-13)


def test_k16_eta9_pairs():
    r = find_roots(poly(sector_of_equal_spin(16, 0), 9)).roots
    assert len(r) == 16
    np.testing.assert_allclose(np.sort(-r), r, rtol=1e-8)
    np.testing.assert_allclose(np.sort(1 / r), r, rtol=1e-8)
    for v in (7.0260, 0.1423):
        assert np.min(np.abs(np.abs(r) - v)) < 5e-5


def test_bae_single_root_closed_form():
    assert bae_residual(np.array([1.0]), HALF, 0) == 0.0


@pytest.mark.parametrize("k,mu,eta,printed", [
    (2, 0, 1, [-2.4142, -0.4142]),
    (4, 1, 1, [-3.0437, -1.0, -0.3285]),
])
def test_bae_at_refined_roots(k, mu, eta, printed):
    s = sector_of_equal_spin(k, mu)
    r = find_roots(poly(s, eta))
    np.testing.assert_allclose(r.roots, printed, atol=5e-5)
    assert np.abs(bae_residuals(r.roots, s)).max() < 1e-8
    assert r.max_residual < 1e-8


def test_bae_coincident_roots():
    with pytest.raises(InvariantViolation):
        bae_residual(np.array([-1.0, -1.0]), Sector(2, 0, 0), 0)


def test_energy_from_roots():
    assert energy_from_roots(np.zeros(0), Sector(0, 0, 0)) == 0.0
    s = sector_of_equal_spin(2, 0)
    e = energy_from_roots([-(np.sqrt(2) + 1), -(np.sqrt(2) - 1)], s)
    assert e == pytest.approx(-2 * np.sqrt(2), abs=1e-12)
    s16 = sector_of_equal_spin(16, 0)
    assert energy_from_roots(find_roots(poly(s16, 17)).roots, s16) == pytest.approx(132.862, abs=5e-4)


def test_energy_forms_disagreement_raises():
    with pytest.raises(InvariantViolation):
        energy_from_roots([-1.0, -3.0], Sector(2, 0, 0))


def test_energy_from_coeffs():
    assert energy_from_coeffs(handmade([1, 1], -1.0)) == pytest.approx(-1)
    s = sector_of_equal_spin(4, 3)
    assert energy_from_coeffs(handmade([-1, 1], 4.0, s)) == pytest.approx(4)
    assert energy_from_coeffs(handmade([-1, 0, 1], 0.0, sector_of_equal_spin(4, 2))) == 0.0
    with pytest.raises(InvariantViolation):
        energy_from_coeffs(handmade([1, 1], 1.0))


def test_fuchsian_examples():
    assert fuchsian_residual(handmade([1, 1], -1.0)) == 0.0
    assert fuchsian_residual(handmade([-1, 1], 1.0)) == 0.0
    p = poly(sector_of_equal_spin(6, 0), 3)
    bad = replace(p, coeffs=p.coeffs + np.eye(len(p.coeffs))[0] * 1e-3)
    assert fuchsian_residual(bad) > 1e-4


def test_symmetric_functions():
    np.testing.assert_array_equal(
        symmetric_functions(handmade([-1, 0, 1], 0.0, Sector(2, 1, 1))).S, [1, 0, -1])
    np.testing.assert_array_equal(symmetric_functions(handmade([1, 1], -1.0)).S, [1, -1])
    p = poly(sector_of_equal_spin(2, 0), 1)
    e = elementary_symmetric(find_roots(p).roots)
    np.testing.assert_allclose(symmetric_functions(p).S, e, rtol=1e-8)


def test_symmetric_functions_need_monic_gauge():
    with pytest.raises(DomainError):
        symmetric_functions(handmade([1, 2], -1.0))


def test_zero_root_rejected():
    # v0 = 0 in a sector with an x = 0 root would have f_0 = 0
    s = Sector(2, 0, 0)
    p = handmade([0.0, 1.0, 1.0], 0.0, s)
    with pytest.raises(InvariantViolation):
        find_roots(p)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 24), st.integers(0, 6), st.integers(0, 6), st.data())
def test_roots_satisfy_bae_and_reproduce_energy(kappa, mu1, mu2, data):
    s = Sector(kappa, mu1, mu2)
    sol = solve_spectrum(build_matrix(s))
    eta = data.draw(st.integers(1, kappa + 1))
    p = polynomial_from_solution(sol, eta)
    r = find_roots(p)
    assert len(r.roots) == kappa and np.all(np.diff(r.roots) > 0)
    assert r.max_residual <= 1e-8
    assert energy_from_roots(r.roots, s) == pytest.approx(p.v0, rel=1e-8, abs=1e-8)
    assert energy_from_coeffs(p) == pytest.approx(p.v0, rel=1e-9, abs=1e-9)
    assert fuchsian_residual(p) <= 1e-10
    # mirror partner
    q = polynomial_from_solution(sol, kappa + 2 - eta)
    np.testing.assert_allclose(np.sort(-find_roots(q).roots), r.roots, rtol=1e-8)


def test_large_kappa_roots():
    s = sector_of_equal_spin(64, 0)
    sol = solve_spectrum(build_matrix(s))
    for eta in (1, 20, 33, 65):
        r = find_roots(polynomial_from_solution(sol, eta))
        assert r.max_residual <= 1e-8
