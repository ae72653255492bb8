"""End-to-end Bethe solution of one sector or of a whole spin pair."""
from __future__ import annotations

from dataclasses import dataclass

from .model import EigenLevel, Sector, SpinPair, enumerate_sectors
from .polynomial import (BetheRoots, HSPolynomial, find_roots,
                         polynomial_from_solution)
from .recurrence import SpectralSolution, build_matrix, solve_spectrum

__all__ = ["BetheSolution", "solve_sector", "sector_levels", "spectrum_levels"]


@dataclass(frozen=True)
class BetheSolution:
    level: EigenLevel
    polynomial: HSPolynomial
    roots: BetheRoots | None = None


def _levels(sol: SpectralSolution) -> list[EigenLevel]:
    s = sol.sector
    return [EigenLevel(s, eta, float(v0), s.degeneracy)
            for eta, v0 in enumerate(sol.v0s, start=1)]


def sector_levels(sector: Sector) -> list[EigenLevel]:
    """Energies only; no polynomial roots are computed."""
    return _levels(solve_spectrum(build_matrix(sector)))


def solve_sector(sector: Sector, with_roots: bool = True) -> list[BetheSolution]:
    sol = solve_spectrum(build_matrix(sector))
    out = []
    for level in _levels(sol):
        poly = polynomial_from_solution(sol, level.eta)
        out.append(BetheSolution(level, poly, find_roots(poly) if with_roots else None))
    return out


def spectrum_levels(spins: SpinPair) -> list[EigenLevel]:
    """Every level of ``spins``; degenerate copies are carried by ``degeneracy``."""
    return [lv for s in enumerate_sectors(spins) for lv in sector_levels(s)]
