"""Brute-force reference: the dense Hamiltonian in the uncoupled product basis."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import DomainError
from .model import EigenLevel, SpinPair

__all__ = [
    "MAX_DIM",
    "DenseHamiltonian",
    "SpectrumReport",
    "build_dense",
    "block_spectrum",
    "compare_spectra",
    "ladder",
]

MAX_DIM = 4096


def ladder(two_s: int, two_m: int) -> float:
    """<m+1| S+ |m> = sqrt(S(S+1) - m(m+1)) from doubled quantum numbers."""
    return float(np.sqrt((two_s * (two_s + 2) - two_m * (two_m + 2)) / 4.0))


@dataclass(frozen=True)
class DenseHamiltonian:
    """H/chi with basis kets ordered by descending m1, then descending m2.

    ``basis[i]`` is the doubled pair ``(2 m1, 2 m2)`` of row ``i``;
    ``block_index[D]`` lists the rows with ``2 m1 - 2 m2 = D`` in chain order
    (descending m1), so each block is tridiagonal with zero diagonal.
    """

    spins: SpinPair
    matrix: np.ndarray
    basis: tuple[tuple[int, int], ...]
    block_index: dict[int, list[int]] = field(repr=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def index(self, two_m1: int, two_m2: int) -> int:
        i1 = (self.spins.two_s1 - two_m1) // 2
        i2 = (self.spins.two_s2 - two_m2) // 2
        return i1 * (self.spins.two_s2 + 1) + i2

    def block(self, label: int) -> np.ndarray:
        rows = self.block_index[label]
        return self.matrix[np.ix_(rows, rows)]


def build_dense(spins: SpinPair) -> DenseHamiltonian:
    if spins.dim > MAX_DIM:
        raise DomainError(f"dense oracle capped at dim {MAX_DIM}, got {spins.dim}")
    a, b = spins.two_s1, spins.two_s2
    basis = tuple((m1, m2) for m1 in range(a, -a - 1, -2) for m2 in range(b, -b - 1, -2))
    h = np.zeros((spins.dim, spins.dim))
    blocks: dict[int, list[int]] = {}
    for i, (m1, m2) in enumerate(basis):
        blocks.setdefault(m1 - m2, []).append(i)
        if m1 < a and m2 < b:
            j = (i - (b + 1)) - 1  # (m1 + 1, m2 + 1) in the descending ordering
            h[i, j] = h[j, i] = ladder(a, m1) * ladder(b, m2)
    return DenseHamiltonian(spins, h, basis, dict(sorted(blocks.items())))


def block_spectrum(h: DenseHamiltonian) -> dict[int, np.ndarray]:
    """Sorted eigenvalues of every conserved block."""
    return {label: scipy.linalg.eigvalsh(h.block(label)) if len(rows) > 1
            else np.array([h.matrix[rows[0], rows[0]]])
            for label, rows in h.block_index.items()}


@dataclass
class SpectrumReport:
    max_abs: float
    max_rel: float
    tol: float
    passed: bool
    structural: list[str]
    per_block: dict[int, float]

    def summary(self) -> dict:
        return {
            "passed": self.passed,
            "max_abs_deviation": self.max_abs,
            "max_rel_deviation": self.max_rel,
            "tolerance": self.tol,
            "structural_errors": list(self.structural),
        }


def compare_spectra(levels: list[EigenLevel], h: DenseHamiltonian,
                    tol: float = 1e-9) -> SpectrumReport:
    """Pair Bethe levels with oracle eigenvalues block by block.

    Each level is placed in every chain listed by its sector (so a
    two-fold level appears once in each of its two blocks); deviations are
    relative to the spectral radius of the dense matrix.
    """
    oracle = block_spectrum(h)
    bethe: dict[int, list[float]] = {}
    for lv in levels:
        if len(lv.sector.blocks) != lv.degeneracy:
            raise DomainError(f"level of {lv.sector.label} lacks chain labels")
        for label in lv.sector.blocks:
            bethe.setdefault(label, []).append(lv.energy)

    radius = max((float(np.abs(v).max()) for v in oracle.values()), default=0.0)
    scale = max(radius, 1.0)
    structural = []
    per_block = {}
    max_abs = 0.0
    for label in sorted(set(oracle) | set(bethe)):
        ours = np.sort(np.asarray(bethe.get(label, []), dtype=float))
        ref = oracle.get(label, np.zeros(0))
        if len(ours) != len(ref):
            structural.append(f"block {label}: {len(ours)} Bethe levels vs {len(ref)} oracle")
            continue
        dev = float(np.abs(ours - ref).max()) if len(ref) else 0.0
        per_block[label] = dev
        max_abs = max(max_abs, dev)
    max_rel = max_abs / scale
    passed = not structural and max_rel <= tol
    return SpectrumReport(max_abs, max_rel, tol, passed, structural, per_block)
