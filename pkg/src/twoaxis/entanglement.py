"""Von Neumann entanglement entropy of eigenstates between the two spins."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .eigenstate import (ANTISYMMETRIC, NO_PARITY, SYMMETRIC, EigenState,
                         build_equal_spin_state)
from .model import sector_of_equal_spin
from .polynomial import polynomial_from_solution, symmetric_functions
from .recurrence import build_matrix, solve_spectrum

__all__ = [
    "EntanglementRecord",
    "mode_base",
    "reduced_density",
    "schmidt_weights",
    "entropy",
    "subsystem_entropy",
    "sweep",
]

CLAMP = 1e-15
NORM_TOL = 1e-10


@dataclass(frozen=True)
class EntanglementRecord:
    """Normalized entropy of one eigenstate.

    ``default_base`` is False when ``base_n`` was supplied by the caller
    rather than taken from the mode count of the equal-spin family.
    """

    mu: int
    eta: int
    parity: str
    entropy: float
    base_n: int
    default_base: bool = True


def mode_base(k: int, mu: int) -> int:
    """Number of product kets the state spreads over: k+1 for mu=0, else 2(k-mu+1)."""
    return k + 1 if mu == 0 else 2 * (k - mu + 1)


def _check_normalized(state: EigenState):
    n2 = sum(v * v for v in state.amplitudes.values())
    if abs(n2 - 1.0) > NORM_TOL:
        raise DomainError(f"state is not normalized (norm^2 = {n2!r})")


def _support_matrix(state: EigenState):
    rows = sorted({m1 for m1, _ in state.amplitudes}, reverse=True)
    cols = sorted({m2 for _, m2 in state.amplitudes}, reverse=True)
    r_at = {m: i for i, m in enumerate(rows)}
    c_at = {m: i for i, m in enumerate(cols)}
    c = np.zeros((len(rows), len(cols)))
    for (m1, m2), v in state.amplitudes.items():
        c[r_at[m1], c_at[m2]] = v
    return c, rows, cols


def reduced_density(state: EigenState, subsystem: int = 1):
    """Partial trace onto spin ``subsystem``.

    Returns ``(rho, labels)`` where ``labels`` are the doubled magnetic
    quantum numbers (descending) of the rows carrying nonzero weight.
    """
    if subsystem not in (1, 2):
        raise DomainError(f"subsystem must be 1 or 2, got {subsystem!r}")
    _check_normalized(state)
    c, rows, cols = _support_matrix(state)
    if subsystem == 1:
        return c @ c.T, rows
    return c.T @ c, cols


def schmidt_weights(state: EigenState) -> np.ndarray:
    """Eigenvalues of either reduced density matrix, from the singular values of C."""
    _check_normalized(state)
    c, _, _ = _support_matrix(state)
    p = np.linalg.svd(c, compute_uv=False) ** 2
    p[p < CLAMP] = 0.0
    return p


def _entropy_of(p: np.ndarray, base_n: int) -> float:
    if base_n < 2:
        return 0.0
    p = p[p > 0.0]
    return float(-np.sum(p * np.log(p)) / math.log(base_n))


def subsystem_entropy(state: EigenState, subsystem: int, base_n: int) -> float:
    """Entropy from the explicit eigenvalues of rho_1 or rho_2."""
    rho, _ = reduced_density(state, subsystem)
    p = np.linalg.eigvalsh(rho)
    p[p < CLAMP] = 0.0
    return _entropy_of(p, base_n)


def entropy(state: EigenState, base_n: int | None = None) -> EntanglementRecord:
    """-Tr(rho_1 log_N rho_1) for ``state``.

    Equal-spin S/A states default to the mode-count base; any other state
    needs ``base_n`` and is tagged ``default_base=False``.
    """
    sector = state.sector
    family = state.parity != NO_PARITY and state.spins.equal and sector.mu1 == sector.mu2
    if base_n is None:
        if not family:
            raise DomainError("no default logarithm base for this state; pass base_n")
        k = state.spins.two_s1
        base_n = mode_base(k, sector.mu1)
        default = True
    else:
        default = False
    value = _entropy_of(schmidt_weights(state), base_n)
    return EntanglementRecord(sector.mu1, state.eta, state.parity, value, base_n, default)


def sweep(k: int) -> list[EntanglementRecord]:
    """Every (mu, eta, parity) of S1 = S2 = k/2, ordered mu, eta, S before A."""
    if k < 1:
        raise DomainError(f"k must be at least 1, got {k}")
    records = []
    for mu in range(k + 1):
        sol = solve_spectrum(build_matrix(sector_of_equal_spin(k, mu)))
        for eta in range(1, len(sol.v0s) + 1):
            S = symmetric_functions(polynomial_from_solution(sol, eta))
            for parity in ((SYMMETRIC, ANTISYMMETRIC) if mu else (SYMMETRIC,)):
                records.append(entropy(build_equal_spin_state(k, mu, eta, parity, S)))
    return records
