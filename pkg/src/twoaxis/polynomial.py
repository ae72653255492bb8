"""Extended Heine-Stieltjes polynomials and their zeros (the Bethe roots).

The zeros {x_i} of y(x) = sum_n f_n x^n solve

    lambda1/x_i - lambda2 x_i + sum_{j != i} (1 + x_i x_j)/(x_i - x_j) = 0,

and the energy is E/chi = 2 lambda1 sum 1/x_i = 2 lambda2 sum x_i = v0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, InvariantViolation
from .model import Sector
from .recurrence import SpectralSolution, van_vleck_linear

__all__ = [
    "HSPolynomial",
    "BetheRoots",
    "SymmetricFunctions",
    "polynomial_from_solution",
    "find_roots",
    "bae_residual",
    "bae_residuals",
    "energy_from_roots",
    "energy_from_coeffs",
    "fuchsian_residual",
    "symmetric_functions",
    "elementary_symmetric",
]

ZERO_ROOT_TOL = 1e-13
IMAG_TOL = 1e-8
DISTINCT_TOL = 1e-10
BAE_TOL = 1e-8
ENERGY_FORMS_TOL = 1e-9
COEFF_ENERGY_TOL = 1e-9
ROOT_ENERGY_TOL = 1e-8
MAX_NEWTON = 60
SPREAD_FOR_SCALING = 1e4


@dataclass(frozen=True)
class HSPolynomial:
    """y(x) in the monic gauge f_kappa = 1, with its Van Vleck constants."""

    coeffs: np.ndarray
    v0: float
    v1: int
    sector: Sector
    eta: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coeffs)


@dataclass(frozen=True)
class BetheRoots:
    """Sorted real roots and the BAE defect at each of them."""

    roots: np.ndarray
    residuals: np.ndarray

    @property
    def max_residual(self) -> float:
        return float(np.abs(self.residuals).max()) if self.residuals.size else 0.0


@dataclass(frozen=True)
class SymmetricFunctions:
    """S_0..S_kappa, the elementary symmetric functions of the roots."""

    S: np.ndarray


def polynomial_from_solution(sol: SpectralSolution, eta: int) -> HSPolynomial:
    """Polynomial number ``eta`` (1-based, ascending energy) of ``sol``."""
    n = len(sol.v0s)
    if not 1 <= eta <= n:
        raise DomainError(f"eta must lie in 1..{n}, got {eta}")
    coeffs = np.array(sol.vectors[:, eta - 1], dtype=float)
    if len(coeffs) > 1 and _root_modulus_ratio(coeffs) < ZERO_ROOT_TOL:
        raise InvariantViolation(
            f"f_0 vanishes for eta={eta} in {sol.sector.label}: root at x = 0")
    return HSPolynomial(coeffs, float(sol.v0s[eta - 1]), van_vleck_linear(sol.sector),
                        sol.sector, eta)


def _root_modulus_ratio(f: np.ndarray) -> float:
    """Fujiwara lower bound on min|x_i| over Fujiwara upper bound on max|x_i|.

    f_0 counts as zero when this ratio drops below ``ZERO_ROOT_TOL``; a bare
    |f_0| / max|f_n| test would flag reciprocal root sets (f_0 = +-1 while
    middle coefficients grow like binomials) for kappa beyond ~27.
    """
    k = len(f) - 1
    if f[0] == 0.0:
        return 0.0
    n = np.arange(1, k + 1)
    upper = 2.0 * np.max(np.abs(f[k - n] / f[k]) ** (1.0 / n))
    lower = 1.0 / (2.0 * np.max(np.abs(f[n] / f[0]) ** (1.0 / n)))
    return float(lower / upper)


def symmetric_functions(p: HSPolynomial) -> SymmetricFunctions:
    k = p.degree
    if p.coeffs[k] != 1.0:
        raise DomainError("symmetric functions need the monic gauge f_kappa = 1")
    signs = (-1.0) ** np.arange(k + 1)
    return SymmetricFunctions(signs * p.coeffs[::-1])


def elementary_symmetric(roots) -> np.ndarray:
    """e_0..e_n of ``roots`` computed from the roots themselves."""
    c = np.poly(np.asarray(roots, dtype=float)) if len(roots) else np.ones(1)
    return c * (-1.0) ** np.arange(len(c))


# -- Bethe ansatz equations --------------------------------------------------

def _pair_terms(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    if np.any(diff == 0.0):
        raise InvariantViolation("coincident Bethe roots")
    return diff, 1.0 + x[:, None] * x[None, :]


def bae_residuals(roots, sector: Sector) -> np.ndarray:
    """Left-hand side of every Bethe ansatz equation."""
    x = np.asarray(roots, dtype=float)
    if x.size == 0:
        return np.zeros(0)
    if np.any(x == 0.0):
        raise InvariantViolation("Bethe root at the singular point x = 0")
    diff, num = _pair_terms(x)
    pair = num / diff
    np.fill_diagonal(pair, 0.0)
    l1, l2 = float(sector.lambda1), float(sector.lambda2)
    return l1 / x - l2 * x + pair.sum(axis=1)


def bae_residual(roots, sector: Sector, i: int) -> float:
    """Defect of the BAE for root component ``i`` (0-based)."""
    return float(bae_residuals(roots, sector)[i])


def _bae_jacobian(x: np.ndarray, sector: Sector) -> np.ndarray:
    diff, _ = _pair_terms(x)
    d2 = diff ** 2
    jac = (1.0 + x[:, None] ** 2) / d2
    np.fill_diagonal(jac, 0.0)
    own = (1.0 + x[None, :] ** 2) / d2
    np.fill_diagonal(own, 0.0)
    l1, l2 = float(sector.lambda1), float(sector.lambda2)
    jac[np.diag_indices_from(jac)] = -l1 / x ** 2 - l2 - own.sum(axis=1)
    return jac


def _refine_bae(x: np.ndarray, sector: Sector, iterations: int = MAX_NEWTON) -> np.ndarray:
    """Damped Newton on the BAE system; never accepts a worse iterate."""
    try:
        r = np.abs(bae_residuals(x, sector)).max()
    except InvariantViolation:
        return x
    for _ in range(iterations):
        if r == 0.0:
            break
        try:
            step = np.linalg.solve(_bae_jacobian(x, sector), -bae_residuals(x, sector))
        except (np.linalg.LinAlgError, InvariantViolation):
            break
        t = 1.0
        while t > 1e-6:
            trial = x + t * step
            try:
                rt = np.abs(bae_residuals(trial, sector)).max()
            except InvariantViolation:
                rt = np.inf
            if rt < r:
                break
            t *= 0.5
        else:
            break
        converged = np.all(np.abs(trial - x) <= 1e-14 * np.abs(x))
        x, r = trial, rt
        if converged:
            break
    return x


# -- roots of the polynomial ---------------------------------------------------

def _companion_roots(monic: np.ndarray) -> np.ndarray:
    k = len(monic) - 1
    c = np.zeros((k, k))
    c[1:, :-1] = np.eye(k - 1)
    c[:, -1] = -monic[:-1]
    return np.linalg.eigvals(c)


def _horner(coeffs: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p = np.full_like(x, coeffs[-1])
    dp = np.zeros_like(x)
    for c in coeffs[-2::-1]:
        dp = dp * x + p
        p = p * x + c
    return p, dp


def _newton_polish(coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Newton on y(x), per root, until |dx| <= 1e-14 |x| or MAX_NEWTON steps.

    A step that increases |y| is rejected and freezes that root: it has hit
    the rounding floor of the coefficients.
    """
    x = x.copy()
    active = np.ones(len(x), dtype=bool)
    p, dp = _horner(coeffs, x)
    for _ in range(MAX_NEWTON):
        if not active.any():
            break
        idx = np.flatnonzero(active & (dp != 0.0))
        active[dp == 0.0] = False
        step = p[idx] / dp[idx]
        trial = x[idx] - step
        pt, dpt = _horner(coeffs, trial)
        better = np.abs(pt) < np.abs(p[idx])
        keep = idx[better]
        x[keep], p[keep], dp[keep] = trial[better], pt[better], dpt[better]
        done = ~better | (np.abs(step) <= 1e-14 * np.abs(trial))
        active[idx[done]] = False
    return x


def _real_starts(z: np.ndarray) -> np.ndarray:
    """Real starting points; a conjugate pair a +- ib becomes a -+ |b|."""
    out = []
    for r in z:
        if abs(r.imag) <= IMAG_TOL * max(1.0, abs(r)):
            out.append(r.real)
        elif r.imag > 0:
            out.extend((r.real - r.imag, r.real + r.imag))
    return np.sort(np.asarray(out))


def find_roots(p: HSPolynomial) -> BetheRoots:
    """The kappa real, distinct, nonzero zeros of ``p``.

    Companion-matrix eigenvalues (with a power-of-two rescaling of x for
    widely spread roots) are polished by Newton on the polynomial and then
    by Newton on the Bethe ansatz equations themselves; the monomial
    coefficients alone cannot pin the smallest roots to BAE accuracy beyond
    kappa ~ 20.  The result must reproduce ``p.v0`` through the energy sum,
    which identifies it as the root set of this particular eta.
    """
    k = p.degree
    sector = p.sector
    if k == 0:
        return BetheRoots(np.zeros(0), np.zeros(0))
    f = np.asarray(p.coeffs, dtype=float)
    if f[0] == 0.0:
        raise InvariantViolation(f"f_0 = 0 for eta={p.eta} in {sector.label}")

    problem = ""
    raw_imag = 0.0
    for s in _scalings(f):
        g = f * s ** np.arange(k + 1)
        z = _companion_roots(g / g[k]) * s
        raw_imag = float(np.abs(z.imag).max())
        x = _real_starts(z)
        if len(x) == k:
            real = np.abs(z.imag) <= IMAG_TOL * np.maximum(1.0, np.abs(z))
            if real.all():
                x = np.sort(_newton_polish(f, x))
            x = np.sort(_refine_bae(x, sector))
        problem = _root_problem(x, k, sector, p.v0)
        if not problem:
            return BetheRoots(x, bae_residuals(x, sector))

    if raw_imag > IMAG_TOL:
        problem += f"; companion roots complex (max imaginary part {raw_imag:.3e})"
    raise InvariantViolation(f"eta={p.eta} in {sector.label}: {problem}")


def _scalings(f: np.ndarray):
    """x-scalings to try: none, the balancing power of two, then a sweep.

    The balanced one is only offered when the estimated root spread exceeds
    ``SPREAD_FOR_SCALING``; the sweep is a last resort for kappa >~ 50, where
    rounding of the monomial coefficients can push the companion spectrum
    into the basin of a neighbouring solution.
    """
    yield 1.0
    z = _companion_roots(f / f[-1])
    big, small = np.abs(z).max(), np.abs(z).min()
    tried = {1.0}
    if big > SPREAD_FOR_SCALING * small:
        s = 2.0 ** np.round(0.5 * np.log2(big * small))
        tried.add(s)
        yield s
    for j in (-1, 1, -2, -3, -4, -6, -8, 2, 3):
        s = 2.0 ** j
        if s not in tried:
            yield s


def _root_problem(x: np.ndarray, k: int, sector: Sector, v0: float) -> str:
    if len(x) != k:
        return f"found {len(x)} roots for degree {k}"
    if np.any(x == 0.0):
        return "root at zero"
    if k > 1:
        ax = np.abs(x)
        spacing = np.diff(x) / np.maximum(ax[1:], ax[:-1])
        if spacing.min() <= DISTINCT_TOL:
            return f"coincident roots (relative spacing {spacing.min():.3e})"
    res = np.abs(bae_residuals(x, sector)).max()
    if not res <= BAE_TOL:
        return f"BAE residual {res:.3e} exceeds {BAE_TOL:g}"
    e = 2.0 * float(sector.lambda1) * np.sum(1.0 / x)
    if abs(e - v0) > ROOT_ENERGY_TOL * max(1.0, abs(v0)):
        return f"root energy {e!r} does not reproduce v0 = {v0!r}"
    return ""


# -- energies ----------------------------------------------------------------

def energy_from_roots(roots, sector: Sector, tol: float = ENERGY_FORMS_TOL) -> float:
    """E/chi = 2 lambda1 sum 1/x_i, checked against 2 lambda2 sum x_i.

    Agreement is measured relative to the summand magnitude
    ``2 lambda1 sum |1/x_i| + 2 lambda2 sum |x_i|`` so that zero energies,
    which arise from exact cancellation, are judged on the same footing.
    """
    x = np.asarray(roots, dtype=float)
    if x.size == 0:
        return 0.0
    l1, l2 = float(sector.lambda1), float(sector.lambda2)
    inv = 2.0 * l1 * np.sum(1.0 / x)
    direct = 2.0 * l2 * np.sum(x)
    scale = 2.0 * l1 * np.sum(np.abs(1.0 / x)) + 2.0 * l2 * np.sum(np.abs(x))
    if abs(inv - direct) > tol * scale:
        raise InvariantViolation(
            f"energy forms disagree in {sector.label}: {inv!r} vs {direct!r}")
    return float(inv)


def energy_from_coeffs(p: HSPolynomial, sector: Sector | None = None,
                       tol: float = COEFF_ENERGY_TOL) -> float:
    """E/chi = -2 lambda1 f_1 / f_0, checked against the eigenvalue v0."""
    sector = sector or p.sector
    if p.degree == 0:
        return 0.0
    f0, f1 = p.coeffs[0], p.coeffs[1]
    if f0 == 0.0:
        raise InvariantViolation("f_0 = 0: root at x = 0")
    e = -2.0 * float(sector.lambda1) * f1 / f0
    if abs(e - p.v0) > tol * max(1.0, abs(p.v0)):
        raise InvariantViolation(
            f"-2 lambda1 f1/f0 = {e!r} differs from v0 = {p.v0!r} in {sector.label}")
    return float(e)


def fuchsian_residual(p: HSPolynomial, sector: Sector | None = None) -> float:
    """Largest coefficient of the Fuchsian left-hand side, relative to max|f_n|.

    (x + x^3) y'' + (2 lambda1 - 2 (lambda2 + kappa - 1) x^2) y' + (v0 + v1 x) y
    is expanded with exact rational arithmetic on the stored floats.
    """
    sector = sector or p.sector
    k = p.degree
    f = [Fraction(float(c)) for c in p.coeffs] + [Fraction(0), Fraction(0)]
    v0 = Fraction(float(p.v0))
    v1 = Fraction(p.v1)
    two_l1 = Fraction(sector.mu1 + 1)
    shift = Fraction(sector.mu2 + 1, 2) + k - 1

    def coef(n):
        return f[n] if 0 <= n <= k else Fraction(0)

    worst = Fraction(0)
    for n in range(k + 2):
        term = ((n + 1) * n + two_l1 * (n + 1)) * coef(n + 1)
        term += v0 * coef(n)
        term += ((n - 1) * (n - 2) - 2 * shift * (n - 1) + v1) * coef(n - 1)
        worst = max(worst, abs(term))
    return float(worst) / float(np.abs(p.coeffs).max())
