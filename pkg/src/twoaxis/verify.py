"""Cross-checks of a full Bethe solution against the dense oracle and itself."""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .bethe import solve_sector
from .eigenstate import complete_basis
from .entanglement import schmidt_weights, subsystem_entropy, mode_base
from .model import SpinPair, enumerate_sectors
from .oracle import build_dense, compare_spectra
from .polynomial import bae_residuals, fuchsian_residual

__all__ = ["CheckResult", "run_checks", "FAULT_SHIFT", "DEFAULT_TOL"]

DEFAULT_TOL = 1e-8
FAULT_SHIFT = 1e-3

# fixed tolerances; the remaining checks use the caller's ``tol``
SPECTRUM_TOL = 1e-9
SIGN_SYMMETRY_TOL = 1e-10
FUCHSIAN_TOL = 1e-10
COEFF_IDENTITY_TOL = 1e-9
ENTROPY_SYMMETRY_TOL = 1e-10
DEGENERATE_ENTROPY_TOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""


def _check(name, value, tol, detail="") -> CheckResult:
    value = float(value)
    return CheckResult(name, bool(value <= tol), value, tol, detail)


def _rel(a: np.ndarray, b: np.ndarray) -> float:
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


def run_checks(spins: SpinPair, tol: float = DEFAULT_TOL,
               inject_fault: bool = False) -> list[CheckResult]:
    """Every invariant of the solution for ``spins``, in a fixed order.

    ``inject_fault`` shifts the lowest Bethe level by ``FAULT_SHIFT`` before
    the oracle comparison, to exercise the failure path.
    """
    sectors = enumerate_sectors(spins)
    solved = {s: solve_sector(s) for s in sectors}
    levels = [sol.level for sols in solved.values() for sol in sols]
    if inject_fault:
        levels[0] = replace(levels[0], energy=levels[0].energy + FAULT_SHIFT)

    h = build_dense(spins)
    report = compare_spectra(levels, h, tol=SPECTRUM_TOL)
    results = [CheckResult("spectrum_match", report.passed, report.max_rel, SPECTRUM_TOL,
                           "; ".join(report.structural))]

    count = sum(lv.degeneracy for lv in levels)
    results.append(CheckResult("level_count", count == spins.dim, abs(count - spins.dim), 0,
                               f"{count} levels for dimension {spins.dim}"))
    if spins.equal:
        scale = max(abs(lv.energy) for lv in levels) or 1.0
        zeros = sum(lv.degeneracy for lv in levels if abs(lv.energy) <= 1e-9 * scale)
        k = spins.two_s1
        results.append(CheckResult("zero_multiplicity", zeros == k + 1, abs(zeros - k - 1), 0,
                                   f"{zeros} zero-energy levels, expected {k + 1}"))

    sign_defect = bae = fuchs = forms = coeff = root_energy = mirror = recip = 0.0
    for sector, sols in solved.items():
        v0 = np.array([s.level.energy for s in sols])
        radius = max(np.abs(v0).max(), 1.0)
        sign_defect = max(sign_defect, np.abs(v0 + v0[::-1]).max() / radius)
        roots = [s.roots.roots for s in sols]
        l1, l2 = float(sector.lambda1), float(sector.lambda2)
        for sol, x in zip(sols, roots):
            p = sol.polynomial
            fuchs = max(fuchs, fuchsian_residual(p))
            if sector.kappa == 0:
                continue
            bae = max(bae, np.abs(bae_residuals(x, sector)).max())
            inv, direct = 2 * l1 * np.sum(1 / x), 2 * l2 * np.sum(x)
            scale = 2 * l1 * np.sum(np.abs(1 / x)) + 2 * l2 * np.sum(np.abs(x))
            forms = max(forms, abs(inv - direct) / scale)
            root_energy = max(root_energy, abs(inv - p.v0) / max(1.0, abs(p.v0)))
            e_coeff = -2 * l1 * p.coeffs[1] / p.coeffs[0]
            coeff = max(coeff, abs(e_coeff - p.v0) / max(1.0, abs(p.v0)))
            if l1 == l2:
                recip = max(recip, _rel(np.sort(1 / x), x))
        for x, y in zip(roots, roots[::-1]):
            mirror = max(mirror, _rel(np.sort(-y), x))

    results += [
        _check("band_sign_symmetry", sign_defect, SIGN_SYMMETRY_TOL),
        _check("bae_residual", bae, tol),
        _check("fuchsian_residual", fuchs, FUCHSIAN_TOL),
        _check("dual_energy_forms", forms, tol),
        _check("root_energy_vs_v0", root_energy, tol),
        _check("coefficient_energy_identity", coeff, COEFF_IDENTITY_TOL),
        _check("root_mirror_closure", mirror, tol),
    ]
    if any(s.mu1 == s.mu2 for s in sectors):
        results.append(_check("root_reciprocal_closure", recip, tol))

    basis = complete_basis(spins)
    vecs = np.array([st.vector() for _, st in basis])
    energies = np.array([e for e, _ in basis])
    hn = max(np.abs(h.matrix).sum(axis=1).max(), 1.0)
    resid = np.abs(h.matrix @ vecs.T - vecs.T * energies).max() / hn
    gram = np.abs(vecs @ vecs.T - np.eye(len(basis))).max()
    results += [
        CheckResult("state_count", len(basis) == spins.dim, abs(len(basis) - spins.dim), 0),
        _check("eigen_residual", resid, tol),
        _check("orthonormality", gram, tol),
    ]

    ent_gap = deg_gap = 0.0
    by_key = {}
    for _, st in basis:
        if spins.equal:
            base = mode_base(spins.two_s1, st.sector.mu1)
        else:
            base = min(spins.two_s1, spins.two_s2) + 1
        if base < 2:
            continue
        e1 = subsystem_entropy(st, 1, base)
        e2 = subsystem_entropy(st, 2, base)
        ent_gap = max(ent_gap, abs(e1 - e2))
        if spins.equal:
            p = schmidt_weights(st)
            p = p[p > 0]
            ent = float(-np.sum(p * np.log(p)) / np.log(base))
            key = (st.sector.mu1, st.eta)
            if key in by_key:
                deg_gap = max(deg_gap, abs(by_key[key] - ent))
            by_key[key] = ent
    results.append(_check("entropy_subsystem_symmetry", ent_gap, ENTROPY_SYMMETRY_TOL))
    if spins.equal:
        results.append(_check("degenerate_pair_entropy", deg_gap, DEGENERATE_ENTROPY_TOL))
    return results
