# src/errors.py

"""
Exception hierarchy shared by every numerical module.

Callers that only care whether a construction failed can catch
`SupercoherentError`; the CLI maps these onto error rows and exit codes.
"""


class SupercoherentError(Exception):
    """Base class for all errors raised by the toolkit."""


class DomainError(SupercoherentError, ValueError):
    """An input lies outside the domain of the requested operation."""


class ConvergenceError(SupercoherentError, ArithmeticError):
    """A series did not reach its stopping criterion within the term cap."""


class TruncationError(SupercoherentError):
    """The Fock truncation drops more than the tolerated tail of a state."""


class NoEigenvectorError(SupercoherentError):
    """The truncated eigenproblem has no solution within the residual tolerance."""


class FamilyError(SupercoherentError):
    """The K matrix belongs to a family the requested construction does not cover."""


class SingularFamilyError(FamilyError):
    """K is not invertible; the forward recurrence cannot be used."""
