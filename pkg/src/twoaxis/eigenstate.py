"""Normalized eigenstates in the uncoupled two-spin product basis.

The Bethe state prod_i (Lambda1+ + x_i Lambda2+)|lw> expands as
sum_rho S_rho (Lambda1+)^(kappa-rho) (Lambda2+)^rho |lw>; each term is a single
product ket whose boson normalization contributes the square root of a
product of four factorials.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bethe import solve_sector
from .errors import DomainError
from .model import Sector, SpinPair, enumerate_sectors, sector_of_equal_spin
from .polynomial import SymmetricFunctions, symmetric_functions

__all__ = [
    "SYMMETRIC",
    "ANTISYMMETRIC",
    "NO_PARITY",
    "EigenState",
    "build_equal_spin_state",
    "build_general_state",
    "mirror_state",
    "overlap",
    "swap_spins",
    "complete_basis",
]

SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"
NO_PARITY = "none"
EXACT_FACTORIAL_MAX = 20


@dataclass(frozen=True)
class EigenState:
    """Unit vector stored sparsely, keyed by doubled ``(2 m1, 2 m2)``.

    ``log_norm`` is the log of the norm of the unnormalized Bethe vector
    (the inverse normalization constant), kept in log space because it
    overflows doubles for large spins.
    """

    spins: SpinPair
    sector: Sector
    eta: int
    parity: str
    amplitudes: dict[tuple[int, int], float]
    log_norm: float

    @property
    def norm(self) -> float:
        return math.exp(self.log_norm)

    def vector(self) -> np.ndarray:
        """Dense amplitudes in the oracle ordering (descending m1, then m2)."""
        a, b = self.spins.two_s1, self.spins.two_s2
        v = np.zeros(self.spins.dim)
        for (m1, m2), c in self.amplitudes.items():
            v[((a - m1) // 2) * (b + 1) + (b - m2) // 2] = c
        return v

    def matrix(self) -> np.ndarray:
        """Amplitudes as C[i1, i2] with i = (2S - 2m)/2."""
        a, b = self.spins.two_s1, self.spins.two_s2
        c = np.zeros((a + 1, b + 1))
        for (m1, m2), amp in self.amplitudes.items():
            c[(a - m1) // 2, (b - m2) // 2] = amp
        return c


def _log_weights(kappa: int, mu1: int, mu2: int) -> np.ndarray:
    """0.5 log[(kappa+mu1-rho)! (mu2+rho)! (kappa-rho)! rho!] for every rho."""
    rho = range(kappa + 1)
    if kappa + max(mu1, mu2) <= EXACT_FACTORIAL_MAX:
        f = math.factorial
        return np.array([0.5 * math.log(f(kappa + mu1 - r) * f(mu2 + r) * f(kappa - r) * f(r))
                         for r in rho])
    lg = math.lgamma
    return np.array([0.5 * (lg(kappa + mu1 - r + 1) + lg(mu2 + r + 1)
                            + lg(kappa - r + 1) + lg(r + 1)) for r in rho])


def _coefficients(S: SymmetricFunctions, kappa: int, mu1: int, mu2: int):
    """Unit-normalized S_rho * sqrt(factorials) and the log of the raw norm."""
    s = np.asarray(S.S, dtype=float)
    if len(s) != kappa + 1:
        raise DomainError(f"need {kappa + 1} symmetric functions, got {len(s)}")
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(s)) + _log_weights(kappa, mu1, mu2)
    top = logs.max()
    c = np.sign(s) * np.exp(logs - top)
    n = float(np.linalg.norm(c))
    return c / n, top + math.log(n)


def build_equal_spin_state(k: int, mu: int, eta: int, parity: str,
                           S: SymmetricFunctions) -> EigenState:
    """Symmetric or antisymmetric eigenstate of S1 = S2 = k/2 in band ``mu``.

    Component rho sits on |k/2 - rho> x |k/2 - mu - rho> and, with the
    requested sign, on its spin-swapped partner.
    """
    sector = sector_of_equal_spin(k, mu)
    kappa = sector.kappa
    if not 1 <= eta <= kappa + 1:
        raise DomainError(f"eta must lie in 1..{kappa + 1}, got {eta}")
    if parity not in (SYMMETRIC, ANTISYMMETRIC):
        raise DomainError(f"parity must be symmetric or antisymmetric, got {parity!r}")
    if parity == ANTISYMMETRIC and mu == 0:
        raise DomainError("the antisymmetric combination vanishes identically for mu = 0")

    c, log_norm = _coefficients(S, kappa, mu, mu)
    sign = 1.0 if parity == SYMMETRIC else -1.0
    pref = 1.0 / math.sqrt(2.0 * (1 + (mu == 0)))
    amps: dict[tuple[int, int], float] = {}
    for rho, value in enumerate(c):
        m1, m2 = k - 2 * rho, k - 2 * mu - 2 * rho
        amps[(m1, m2)] = amps.get((m1, m2), 0.0) + pref * value
        amps[(m2, m1)] = amps.get((m2, m1), 0.0) + sign * pref * value
    total = math.sqrt(sum(v * v for v in amps.values()))
    amps = {key: v / total for key, v in amps.items()}
    return EigenState(SpinPair(k, k), sector, eta, parity, amps,
                      log_norm + math.log(total))


def build_general_state(sector: Sector, eta: int, S: SymmetricFunctions,
                        basis_choice: int) -> EigenState:
    """Single-chain eigenstate of an arbitrary sector.

    ``basis_choice`` picks the spin assignment of the lowest-weight state:

    1. spin 1 holds both intrinsic quanta, ``2S1 = kappa + mu1 + mu2`` and
       ``2S2 = kappa``; kets |(kappa+mu1-mu2)/2 - rho> x |kappa/2 - rho>.
    2. one quantum per spin, ``2S1 = kappa + mu1`` and ``2S2 = kappa + mu2``;
       kets |(kappa+mu1)/2 - rho> x |(kappa-mu2)/2 - rho>.
    """
    kappa, mu1, mu2 = sector.kappa, sector.mu1, sector.mu2
    if not 1 <= eta <= kappa + 1:
        raise DomainError(f"eta must lie in 1..{kappa + 1}, got {eta}")
    if basis_choice == 1:
        spins = SpinPair(kappa + mu1 + mu2, kappa)
        top1, top2 = kappa + mu1 - mu2, kappa
    elif basis_choice == 2:
        spins = SpinPair(kappa + mu1, kappa + mu2)
        top1, top2 = kappa + mu1, kappa - mu2
    else:
        raise DomainError(f"basis_choice must be 1 or 2, got {basis_choice!r}")
    c, log_norm = _coefficients(S, kappa, mu1, mu2)
    amps = {(top1 - 2 * rho, top2 - 2 * rho): float(v) for rho, v in enumerate(c)}
    return EigenState(spins, sector, eta, NO_PARITY, amps, log_norm)


def mirror_state(state: EigenState) -> EigenState:
    """Image under (m1, m2) -> (-m1, -m2), the degenerate partner chain.

    H is invariant under S+ <-> S- on both spins, and the accompanying phase
    (-1)^(S1-m1+S2-m2) is constant along a chain, so the image is again an
    eigenstate with the same energy.
    """
    amps = {(-m1, -m2): v for (m1, m2), v in state.amplitudes.items()}
    return EigenState(state.spins, state.sector, state.eta, state.parity, amps,
                      state.log_norm)


def overlap(a: EigenState, b: EigenState) -> float:
    if a.spins != b.spins:
        raise DomainError(f"states live in different spaces: {a.spins} vs {b.spins}")
    small, large = sorted((a.amplitudes, b.amplitudes), key=len)
    return float(sum(v * large.get(key, 0.0) for key, v in small.items()))


def swap_spins(state: EigenState) -> EigenState:
    """The same state with the roles of the two spins exchanged."""
    amps = {(m2, m1): v for (m1, m2), v in state.amplitudes.items()}
    spins = SpinPair(state.spins.two_s2, state.spins.two_s1)
    return EigenState(spins, state.sector, state.eta, state.parity, amps, state.log_norm)


def complete_basis(spins: SpinPair) -> list[tuple[float, EigenState]]:
    """(energy, state) for every eigenstate of ``spins``; count equals ``spins.dim``.

    Equal spins use the symmetric/antisymmetric combinations; otherwise each
    sector gives its single-chain state plus, when two-fold, the mirror image.
    """
    a, b = spins.two_s1, spins.two_s2
    if a < b:
        return [(e, swap_spins(s)) for e, s in complete_basis(SpinPair(b, a))]
    out = []
    for sector in enumerate_sectors(spins):
        for sol in solve_sector(sector, with_roots=False):
            S = symmetric_functions(sol.polynomial)
            energy, eta = sol.level.energy, sol.level.eta
            if spins.equal:
                parities = (SYMMETRIC, ANTISYMMETRIC) if sector.mu1 else (SYMMETRIC,)
                out.extend((energy, build_equal_spin_state(a, sector.mu1, eta, p, S))
                           for p in parities)
                continue
            state = build_general_state(sector, eta, S, 1 if sector.oracle_only else 2)
            out.append((energy, state))
            if sector.degeneracy == 2:
                out.append((energy, mirror_state(state)))
    return out
