"""Three-term recurrence matrix of the Heine-Stieltjes coefficients.

Writing the polynomial as y(x) = sum_n f_n x^n, the Fuchsian equation turns
into a zero-diagonal tridiagonal eigenproblem A F = (-v0) F of size kappa+1
whose eigenvalues -v0 are (minus) the energies in units of chi.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InvariantViolation, SolverError
from .model import Sector

__all__ = [
    "RecurrenceMatrix",
    "SpectralSolution",
    "build_matrix",
    "solve_spectrum",
    "van_vleck_linear",
]

# eigenvalues closer than this (relative to the spectral radius) count as a tie
TIE_TOL = 1e-12
IMAG_TOL = 1e-8


@dataclass(frozen=True)
class RecurrenceMatrix:
    """Exact integer entries of A for one sector.

    ``sub[n-1]`` is ``A[n, n-1]`` and ``sup[n]`` is ``A[n, n+1]``.
    """

    sector: Sector
    sub: tuple[int, ...]
    sup: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.sector.kappa + 1

    def dense(self) -> np.ndarray:
        a = np.zeros((self.size, self.size))
        idx = np.arange(self.size - 1)
        a[idx + 1, idx] = self.sub
        a[idx, idx + 1] = self.sup
        return a


@dataclass(frozen=True)
class SpectralSolution:
    """All eigenpairs of A, ordered by ascending v0.

    ``vectors[:, j]`` holds f_0..f_kappa of solution ``eta = j + 1`` in the
    gauge ``f_kappa = 1``.
    """

    matrix: RecurrenceMatrix
    v0s: np.ndarray
    vectors: np.ndarray

    @property
    def sector(self) -> Sector:
        return self.matrix.sector

    @property
    def v1(self) -> int:
        return van_vleck_linear(self.sector)

    def residuals(self) -> np.ndarray:
        """``max|A F + v0 F| / max|F|`` for every eigenpair."""
        a = self.matrix.dense()
        r = a @ self.vectors + self.vectors * self.v0s
        return np.abs(r).max(axis=0) / np.abs(self.vectors).max(axis=0)


def van_vleck_linear(sector: Sector) -> int:
    """The eta-independent linear coefficient v1 = kappa (2 lambda2 + kappa - 1)."""
    k = sector.kappa
    return k * (sector.mu2 + k)


def build_matrix(sector: Sector) -> RecurrenceMatrix:
    """Assemble A with integer arithmetic (2 lambda_i = mu_i + 1)."""
    k = sector.kappa
    two_l1 = sector.mu1 + 1
    two_l2 = sector.mu2 + 1
    v1 = van_vleck_linear(sector)
    sup = tuple((n + 1) * (two_l1 + n) for n in range(k))
    sub = tuple((n - 1) * (n - two_l2 - 2 * k) + v1 for n in range(1, k + 1))
    return RecurrenceMatrix(sector, sub, sup)


def _symmetric_path(m: RecurrenceMatrix):
    sub = np.asarray(m.sub, dtype=float)
    sup = np.asarray(m.sup, dtype=float)
    off = np.sqrt(np.asarray([p * q for p, q in zip(m.sub, m.sup)], dtype=float))
    try:
        w, u = scipy.linalg.eigh_tridiagonal(np.zeros(m.size), off)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SolverError(f"tridiagonal eigensolver failed for {m.sector.label}: {exc}") from exc
    # A = D T D^-1 with d_{n+1}/d_n = sqrt(sub_{n+1}/sup_n); kept in log space
    log_d = np.concatenate([[0.0], np.cumsum(0.5 * (np.log(sub) - np.log(sup)))])
    vectors = u * np.exp(log_d - log_d.max())[:, None]
    return -w, vectors


def _dense_path(m: RecurrenceMatrix):
    try:
        w, vecs = np.linalg.eig(m.dense())
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"dense eigensolver failed for {m.sector.label}: {exc}") from exc
    scale = max(np.abs(w).max(), 1.0)
    if np.abs(w.imag).max() > IMAG_TOL * scale:
        raise InvariantViolation(
            f"complex recurrence spectrum in {m.sector.label}: "
            f"max imaginary part {np.abs(w.imag).max():.3e}")
    return -w.real, vecs.real


def solve_spectrum(m: RecurrenceMatrix, force_dense: bool = False) -> SpectralSolution:
    """Every Van Vleck constant v0 and coefficient vector of ``m``.

    When all products ``sub[n] * sup[n]`` are positive the matrix is
    similar to a symmetric tridiagonal one, which is diagonalized instead;
    otherwise (or with ``force_dense``) a general dense solver is used.
    """
    if m.size == 1:
        return SpectralSolution(m, np.zeros(1), np.ones((1, 1)))
    if not force_dense and all(p * q > 0 for p, q in zip(m.sub, m.sup)):
        v0s, vectors = _symmetric_path(m)
    else:
        v0s, vectors = _dense_path(m)

    order = np.argsort(v0s, kind="stable")
    v0s = v0s[order]
    vectors = vectors[:, order]
    last = vectors[-1]
    if np.any(last == 0.0):
        raise InvariantViolation(f"eigenvector with f_kappa = 0 in {m.sector.label}")
    vectors = vectors / last

    scale = max(np.abs(v0s).max(), 1.0)
    gaps = np.diff(v0s)
    if gaps.size and gaps.min() <= TIE_TOL * scale:
        raise InvariantViolation(
            f"degenerate Van Vleck constants within {m.sector.label} (gap {gaps.min():.3e})")
    return SpectralSolution(m, v0s, vectors)
