"""Exception hierarchy shared by all modules."""


class TwoAxisError(Exception):
    """Base class for every error raised by this package."""


class DomainError(TwoAxisError, ValueError):
    """An argument lies outside the domain of the operation."""


class InvariantViolation(TwoAxisError):
    """A computed object breaks an identity that must hold exactly.

    Raised instead of silently returning numbers that contradict the
    structure of the solution (complex spectra, coincident roots,
    disagreeing energy forms, ...).
    """


class SolverError(TwoAxisError):
    """A numerical kernel failed to converge."""
