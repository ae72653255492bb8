"""Exact Bethe ansatz solution of the two-axis two-spin Hamiltonian.

H = chi (S1+ S2+ + S1- S2-) splits into tridiagonal blocks; each block's
eigenvalues are the Van Vleck constants of a Heine-Stieltjes problem whose
polynomial zeros are the Bethe roots.
"""
from .bethe import BetheSolution, sector_levels, solve_sector, spectrum_levels
from .eigenstate import (EigenState, build_equal_spin_state, build_general_state,
                         complete_basis)
from .entanglement import EntanglementRecord, entropy, sweep
from .errors import DomainError, InvariantViolation, SolverError, TwoAxisError
from .model import (EigenLevel, Sector, SpinPair, enumerate_sectors,
                    equal_spin_sectors, sector_of_equal_spin)
from .oracle import build_dense, compare_spectra
from .polynomial import (BetheRoots, HSPolynomial, find_roots,
                         polynomial_from_solution, symmetric_functions)
from .recurrence import build_matrix, solve_spectrum
from .verify import run_checks

__version__ = "0.1.0"

__all__ = [
    "BetheRoots", "BetheSolution", "DomainError", "EigenLevel", "EigenState",
    "EntanglementRecord", "HSPolynomial", "InvariantViolation", "Sector",
    "SolverError", "SpinPair", "TwoAxisError", "build_dense", "build_equal_spin_state",
    "build_general_state", "build_matrix", "compare_spectra", "complete_basis",
    "entropy", "enumerate_sectors", "equal_spin_sectors", "find_roots",
    "polynomial_from_solution", "run_checks", "sector_levels", "sector_of_equal_spin",
    "solve_sector", "solve_spectrum", "spectrum_levels", "sweep", "symmetric_functions",
]
