import numpy as np
import pytest


def spin_raise(two_s: int) -> np.ndarray:
    """S+ on the basis m = s, s-1, ..., -s (descending)."""
    s = two_s / 2
    m = s - np.arange(two_s + 1)
    sp = np.zeros((two_s + 1, two_s + 1))
    for i in range(1, two_s + 1):
        sp[i - 1, i] = np.sqrt(s * (s + 1) - m[i] * (m[i] + 1))
    return sp


def kron_hamiltonian(two_s1: int, two_s2: int) -> np.ndarray:
    """S1+ S2+ + S1- S2- built from Kronecker products, independent of the package."""
    p1, p2 = spin_raise(two_s1), spin_raise(two_s2)
    up = np.kron(p1, p2)
    return up + up.T


@pytest.fixture
def kron():
    return kron_hamiltonian


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
