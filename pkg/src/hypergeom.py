# src/hypergeom.py

"""
Generalized hypergeometric series.

Every normalizer and quadrature moment of the deformed coherent families is a
ratio of 0F2 values, so this module is the workhorse behind the closed forms.
Terms are generated by their ratio recursion, never from Gamma functions, which
keeps large-n terms free of factorial overflow.
"""

import cmath
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

from src import config
from src.errors import ConvergenceError, DomainError


@dataclass(frozen=True)
class HypergeomParams:
    """Parameters a_1..a_p, b_1..b_q and argument x of pFq."""

    upper: Tuple[complex, ...]
    lower: Tuple[complex, ...]
    argument: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", tuple(complex(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(complex(b) for b in self.lower))
        object.__setattr__(self, "argument", complex(self.argument))

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)


def _is_nonpositive_integer(value: complex) -> bool:
    return value.imag == 0 and value.real <= 0 and float(value.real).is_integer()


def _validate(params: HypergeomParams, tolerance: float) -> None:
    if not tolerance > 0:
        raise DomainError(f"tolerance must be positive, got {tolerance}")
    for b in params.lower:
        if _is_nonpositive_integer(b):
            raise DomainError(f"lower parameter {b} is zero or a negative integer")
    x = params.argument
    if not (cmath.isfinite(x)):
        raise DomainError(f"argument {x} is not finite")
    if params.p > params.q + 1:
        raise DomainError(f"{params.p}F{params.q} diverges for every nonzero argument")
    terminating = any(_is_nonpositive_integer(a) for a in params.upper)
    if params.p == params.q + 1 and abs(x) >= 1 and not terminating:
        raise DomainError(f"{params.p}F{params.q} needs analytic continuation at |x| = {abs(x)}")


def pfq(params: HypergeomParams, tolerance: float = config.HYPERGEOM_TOLERANCE) -> complex:
    """
    Sums the generalized hypergeometric series pFq(a; b; x).

    The series stops once two consecutive terms fall below `tolerance` times
    the magnitude of the running sum. A single small term is not enough: for
    complex x the term sequence can dip close to zero before growing again.

    Args:
        params (HypergeomParams): Upper/lower parameters and the argument.
        tolerance (float): Relative stopping threshold.

    Returns:
        complex: The value of the series.

    Raises:
        DomainError: Invalid lower parameters, non-finite argument or a
            divergent parameter count.
        ConvergenceError: The stopping rule was not met within
            HYPERGEOM_MAX_TERMS terms.
    """
    _validate(params, tolerance)
    x = params.argument
    term = 1.0 + 0.0j
    total = term
    small_in_a_row = 0

    for n in range(config.HYPERGEOM_MAX_TERMS):
        ratio = x / (n + 1)
        for a in params.upper:
            ratio *= a + n
        for b in params.lower:
            ratio /= b + n
        term *= ratio
        total += term
        if abs(term) <= tolerance * abs(total):
            small_in_a_row += 1
            if small_in_a_row == 2:
                logging.debug(f"{params.p}F{params.q} at x={x} converged after {n + 2} terms")
                return total
        else:
            small_in_a_row = 0

    raise ConvergenceError(
        f"{params.p}F{params.q} at x={x} did not converge within {config.HYPERGEOM_MAX_TERMS} terms"
    )


def hyp0f2(b1: float, b2: float, x: complex, tolerance: float = config.HYPERGEOM_TOLERANCE) -> complex:
    """Shorthand for 0F2(; b1, b2; x), the only family the closed forms need."""
    return pfq(HypergeomParams(upper=(), lower=(b1, b2), argument=x), tolerance)


def hyp0f2_real(b1: float, b2: float, x: float, tolerance: float = config.HYPERGEOM_TOLERANCE) -> float:
    """0F2 at a real argument with real parameters; the imaginary part is exactly zero."""
    return hyp0f2(b1, b2, x, tolerance).real


def fixed_length_sum(upper: Sequence[complex], lower: Sequence[complex], x: complex, n_terms: int = 200) -> complex:
    """
    Direct partial sum of the first `n_terms` terms, with no stopping rule.

    Used as an independent reference for `pfq` in the validation suite.
    """
    term = 1.0 + 0.0j
    total = term
    for n in range(n_terms - 1):
        ratio = complex(x) / (n + 1)
        for a in upper:
            ratio *= a + n
        for b in lower:
            ratio /= b + n
        term *= ratio
        total += term
    return total
