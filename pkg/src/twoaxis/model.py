"""Sectors (conserved blocks) of the two-axis two-spin Hamiltonian.

H/chi = S1+ S2+ + S1- S2- only ever shifts (m1, m2) by +-(1, 1), so the
difference m1 - m2 is conserved and the uncoupled product basis splits into
chains.  Every chain is one SU(1,1) x SU(1,1) lowest-weight sector carrying
``kappa`` pair excitations on top of the intrinsic quanta (mu1, mu2), with
weights lambda_i = (mu_i + 1)/2.

Spins are stored doubled (``two_s1 = 2 S1``) so half-integers stay exact, and
chain labels are the doubled differences ``2 m1 - 2 m2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

__all__ = [
    "SpinPair",
    "Sector",
    "EigenLevel",
    "enumerate_sectors",
    "sector_of_equal_spin",
    "equal_spin_sectors",
]


@dataclass(frozen=True)
class SpinPair:
    """Two spins given as doubled integers (``two_s1 = 2*S1``)."""

    two_s1: int
    two_s2: int

    def __post_init__(self):
        for name in ("two_s1", "two_s2"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise DomainError(f"{name} must be a nonnegative integer, got {value!r}")

    @property
    def s1(self) -> Fraction:
        return Fraction(self.two_s1, 2)

    @property
    def s2(self) -> Fraction:
        return Fraction(self.two_s2, 2)

    @property
    def dim(self) -> int:
        return (self.two_s1 + 1) * (self.two_s2 + 1)

    @property
    def equal(self) -> bool:
        return self.two_s1 == self.two_s2

    @classmethod
    def equal_spin(cls, k: int) -> "SpinPair":
        """Both spins equal to k/2."""
        return cls(k, k)


@dataclass(frozen=True)
class Sector:
    """One conserved block, possibly repeated in several chains.

    Attributes
    ----------
    kappa : int
        Number of pair excitations; the block dimension is ``kappa + 1``.
    mu1, mu2 : int
        Intrinsic quanta; ``lambda_i = (mu_i + 1)/2``.
    degeneracy : int
        Number of chains of the dense Hamiltonian carrying this spectrum.
    blocks : tuple of int
        Doubled ``m1 - m2`` labels of those chains (``len == degeneracy``).
    oracle_only : bool
        Sector comes from the lowest-weight states in which one spin carries
        all intrinsic quanta of both modes.  Only verified against the dense
        oracle, never against tabulated values.
    """

    kappa: int
    mu1: int
    mu2: int
    degeneracy: int = 1
    blocks: tuple[int, ...] = ()
    oracle_only: bool = False

    def __post_init__(self):
        for name in ("kappa", "mu1", "mu2"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise DomainError(f"{name} must be a nonnegative integer, got {value!r}")
        if self.degeneracy not in (1, 2):
            raise DomainError(f"degeneracy must be 1 or 2, got {self.degeneracy}")
        if self.blocks and len(self.blocks) != self.degeneracy:
            raise DomainError("one chain label per degenerate copy is required")

    @property
    def lambda1(self) -> Fraction:
        return Fraction(self.mu1 + 1, 2)

    @property
    def lambda2(self) -> Fraction:
        return Fraction(self.mu2 + 1, 2)

    @property
    def dim(self) -> int:
        return self.kappa + 1

    @property
    def label(self) -> str:
        return f"(kappa={self.kappa}, mu1={self.mu1}, mu2={self.mu2})"


@dataclass(frozen=True)
class EigenLevel:
    """One eigen-energy (units of chi) of a sector; ``eta`` is 1-based."""

    sector: Sector
    eta: int
    energy: float
    degeneracy: int


def sector_of_equal_spin(k: int, mu: int) -> Sector:
    """Band ``mu`` of the equal-spin system S1 = S2 = k/2."""
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    if not 0 <= mu <= k:
        raise DomainError(f"mu must lie in 0..{k}, got {mu}")
    if mu == 0:
        return Sector(k, 0, 0, degeneracy=1, blocks=(0,))
    return Sector(k - mu, mu, mu, degeneracy=2, blocks=(2 * mu, -2 * mu))


def equal_spin_sectors(k: int) -> list[Sector]:
    """All bands of S1 = S2 = k/2 in ascending ``mu``."""
    return [sector_of_equal_spin(k, mu) for mu in range(k + 1)]


def enumerate_sectors(spins: SpinPair) -> list[Sector]:
    """All sectors whose chains tile the product basis of ``spins``.

    For ``a = 2S1 >= b = 2S2`` the lowest-weight states with one intrinsic
    quantum number in each spin give, for kappa = 0..b, the pair of chains
    ``+-(mu1 + mu2)`` with ``mu1 = a - kappa``, ``mu2 = b - kappa``.  When
    ``a > b`` the central plateau of ``a - b + 1`` chains of length ``b + 1``
    also contains the states where spin 1 holds both intrinsic quanta,
    ``mu1 + mu2 = a - b``; the two end members coincide with the kappa = b
    pair above, the interior ones are single chains labelled ``mu1 - mu2``.
    ``a < b`` is handled by the spin swap, which negates every chain label.
    """
    a, b = spins.two_s1, spins.two_s2
    if a < b:
        swapped = enumerate_sectors(SpinPair(b, a))
        return [
            Sector(s.kappa, s.mu1, s.mu2, s.degeneracy,
                   tuple(-label for label in s.blocks), s.oracle_only)
            for s in swapped
        ]
    sectors = []
    for kappa in range(b, -1, -1):
        mu1, mu2 = a - kappa, b - kappa
        if mu1 == mu2 == 0:
            sectors.append(Sector(kappa, 0, 0, degeneracy=1, blocks=(0,)))
        else:
            sectors.append(Sector(kappa, mu1, mu2, degeneracy=2,
                                  blocks=(mu1 + mu2, -(mu1 + mu2))))
        if kappa == b:
            for inner in range(1, a - b):
                sectors.append(Sector(b, inner, a - b - inner, degeneracy=1,
                                      blocks=(2 * inner - (a - b),),
                                      oracle_only=True))
    return sectors
