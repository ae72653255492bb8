import math

import numpy as np
import pytest

from twoaxis.bethe import solve_sector
from twoaxis.eigenstate import (ANTISYMMETRIC, SYMMETRIC, build_equal_spin_state,
                                build_general_state, complete_basis, mirror_state,
                                overlap, swap_spins)
from twoaxis.errors import DomainError
from twoaxis.model import Sector, SpinPair, sector_of_equal_spin
from twoaxis.polynomial import SymmetricFunctions, symmetric_functions

from conftest import kron_hamiltonian


def coeffs(sector, eta):
    sol = solve_sector(sector, with_roots=False)[eta - 1]
    return sol.level.energy, symmetric_functions(sol.polynomial)


def residual(state, energy):
    h = kron_hamiltonian(state.spins.two_s1, state.spins.two_s2)
    v = state.vector()
    return np.abs(h @ v - energy * v).max() / max(1.0, np.abs(h).sum(axis=1).max())


def test_bell_state_for_top_band():
    k = 3
    st = build_equal_spin_state(k, k, 1, SYMMETRIC, SymmetricFunctions(np.array([1.0])))
    assert st.amplitudes == pytest.approx({(3, -3): 1 / math.sqrt(2), (-3, 3): 1 / math.sqrt(2)})


def test_antisymmetric_mu0_rejected():
    _, S = coeffs(sector_of_equal_spin(4, 0), 1)
    with pytest.raises(DomainError):
        build_equal_spin_state(4, 0, 1, ANTISYMMETRIC, S)


def test_k4_mu2_zero_energy_state():
    e, S = coeffs(sector_of_equal_spin(4, 2), 2)
    assert abs(e) < 1e-13
    for parity in (SYMMETRIC, ANTISYMMETRIC):
        assert residual(build_equal_spin_state(4, 2, 2, parity, S), 0.0) < 1e-12


def test_product_ket_for_empty_chain():
    st = build_general_state(Sector(0, 2, 1), 1, SymmetricFunctions(np.array([1.0])), 2)
    assert list(st.amplitudes.values()) == [1.0]


def test_basis_choice_one_spin1_half():
    sector = Sector(1, 1, 0)
    e, S = coeffs(sector, 1)
    st = build_general_state(sector, 1, S, 1)
    assert st.spins == SpinPair(2, 1) and len(st.amplitudes) == 2
    assert residual(st, e) < 1e-9


def test_basis_choice_invalid():
    _, S = coeffs(Sector(1, 1, 0), 1)
    with pytest.raises(DomainError):
        build_general_state(Sector(1, 1, 0), 1, S, 3)


def test_overlaps():
    k, mu = 6, 2
    sector = sector_of_equal_spin(k, mu)
    (_, s1), (_, s2) = coeffs(sector, 1), coeffs(sector, 2)
    a = build_equal_spin_state(k, mu, 1, SYMMETRIC, s1)
    assert overlap(a, a) == pytest.approx(1.0, abs=1e-14)
    b = build_equal_spin_state(k, mu, 2, SYMMETRIC, s2)
    assert abs(overlap(a, b)) < 1e-8
    c = build_equal_spin_state(k, mu, 1, ANTISYMMETRIC, s1)
    assert overlap(a, c) == 0.0
    with pytest.raises(DomainError):
        overlap(a, build_equal_spin_state(4, 0, 1, SYMMETRIC, coeffs(sector_of_equal_spin(4, 0), 1)[1]))


def test_mirror_and_swap_preserve_energy():
    sector = Sector(3, 2, 1)
    e, S = coeffs(sector, 2)
    st = build_general_state(sector, 2, S, 2)
    assert residual(mirror_state(st), e) < 1e-10
    assert residual(swap_spins(st), e) < 1e-10


@pytest.mark.parametrize("spins", [(k, k) for k in range(13)] + [(5, 2), (2, 7), (8, 3), (4, 0)])
def test_complete_basis(spins):
    spins = SpinPair(*spins)
    basis = complete_basis(spins)
    assert len(basis) == spins.dim
    h = kron_hamiltonian(spins.two_s1, spins.two_s2)
    vecs = np.array([st.vector() for _, st in basis]).T
    e = np.array([x for x, _ in basis])
    hn = max(1.0, np.abs(h).sum(axis=1).max())
    assert np.abs(h @ vecs - vecs * e).max() <= 1e-8 * hn
    assert np.abs(vecs.T @ vecs - np.eye(spins.dim)).max() <= 1e-8


def test_degenerate_pair_rayleigh_quotients():
    k = 8
    h = kron_hamiltonian(k, k)
    for mu in range(1, k + 1):
        for eta in range(1, k - mu + 2):
            _, S = coeffs(sector_of_equal_spin(k, mu), eta)
            vs = [build_equal_spin_state(k, mu, eta, p, S).vector() for p in (SYMMETRIC, ANTISYMMETRIC)]
            q = [v @ h @ v for v in vs]
            assert q[0] == pytest.approx(q[1], abs=1e-9)


def test_large_spin_normalization_in_log_space():
    k, mu = 60, 3
    _, S = coeffs(sector_of_equal_spin(k, mu), 5)
    st = build_equal_spin_state(k, mu, 5, SYMMETRIC, S)
    assert sum(v * v for v in st.amplitudes.values()) == pytest.approx(1.0, abs=1e-12)
    assert np.isfinite(st.log_norm) and st.log_norm > 100
