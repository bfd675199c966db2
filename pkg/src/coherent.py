# src/coherent.py

"""
Standard and nonlinear coherent states.

Three families are covered, all eigenstates of a deformed lowering operator
f(N)a with complex eigenvalue alpha:

- LINEAR (f = 1): the standard coherent states, c_n ~ alpha^n / sqrt(n!).
- SHIFTED_NUMBER (f = N + 1): c_n ~ alpha^n / (n! sqrt(n!)), normalizer 0F2(1,1;r^2).
- NUMBER (f = N): support starts at |1>, c_{n+1} ~ alpha^n / (n! sqrt((n+1)!)),
  normalizer 0F2(1,2;r^2).

States are generated by the multiplicative recurrence c_{n+1} = c_n alpha / w(n+1)
with w(n) = sqrt(n) f(n-1), and the closed-form normalizer is checked
against the numeric norm. Moments and two-state matrix elements come from 0F2
ratios.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from src import config
from src.errors import DomainError, TruncationError
from src.fock import DeformationKind, FockVector, State, expectation, quadrature_matrices
from src.hypergeom import hyp0f2, hyp0f2_real

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class CoherentLabel:
    amplitude: complex
    family: DeformationKind

    def __post_init__(self) -> None:
        amplitude = complex(self.amplitude)
        if not np.isfinite(amplitude):
            raise DomainError(f"amplitude {amplitude} is not finite")
        object.__setattr__(self, "amplitude", amplitude)

    @property
    def r(self) -> float:
        return abs(self.amplitude)


@dataclass(frozen=True)
class UncertaintyReport:
    """Quadrature moments in hbar = m = omega = 1 units."""

    mean_x: float
    mean_p: float
    mean_x2: float
    mean_p2: float
    var_x: float
    var_p: float
    product: float

    @property
    def product_squared(self) -> float:
        return self.var_x * self.var_p

    @classmethod
    def from_moments(
        cls,
        mean_x: float,
        mean_p: float,
        mean_x2: float,
        mean_p2: float,
        var_x: Optional[float] = None,
        var_p: Optional[float] = None,
    ) -> "UncertaintyReport":
        """Completes a report; variances default to <q^2> - <q>^2."""
        var_x = clamp_variance(mean_x2 - mean_x**2 if var_x is None else var_x, "var_x")
        var_p = clamp_variance(mean_p2 - mean_p**2 if var_p is None else var_p, "var_p")
        return cls(
            mean_x=float(mean_x),
            mean_p=float(mean_p),
            mean_x2=float(mean_x2),
            mean_p2=float(mean_p2),
            var_x=var_x,
            var_p=var_p,
            product=float(np.sqrt(var_x * var_p)),
        )


def clamp_variance(value: float, name: str = "variance") -> float:
    """Variances are nonnegative analytically; rounding is clamped at 0."""
    value = float(value)
    if value < 0:
        if value < -config.VARIANCE_WARN_LEVEL:
            logging.warning(f"{name} = {value:.3e} is negative beyond rounding; clamped to 0")
        return 0.0
    return value


# --- Auxiliary 0F2 ratios ----------------------------------------------------


def beta_of_r(r: float) -> float:
    x = r * r
    f11 = hyp0f2_real(1, 1, x)
    return hyp0f2_real(2, 2, x) / f11 + 0.5 * hyp0f2_real(1, 3, x) / f11


def sigma_of_r(r: float) -> float:
    x = r * r
    f11 = hyp0f2_real(1, 1, x)
    return hyp0f2_real(2, 2, x) / f11 - 0.5 * hyp0f2_real(1, 3, x) / f11


def tau_of_r(r: float) -> float:
    x = r * r
    ratio = hyp0f2_real(1, 2, x) / hyp0f2_real(1, 1, x)
    return 2.0 * ratio**2 - beta_of_r(r)


def rho_of_r(r: float) -> float:
    x = r * r
    f12 = hyp0f2_real(1, 2, x)
    return 2.0 * (hyp0f2_real(2, 2, x) / f12) ** 2 - hyp0f2_real(2, 3, x) / f12


@dataclass(frozen=True)
class AuxiliaryMomentFunctions:
    """beta, sigma, tau (SHIFTED_NUMBER) and rho (NUMBER) evaluated at one r."""

    r: float
    beta: float
    sigma: float
    tau: float
    rho: float


def auxiliary_moments(r: float) -> AuxiliaryMomentFunctions:
    return AuxiliaryMomentFunctions(
        r=float(r), beta=beta_of_r(r), sigma=sigma_of_r(r), tau=tau_of_r(r), rho=rho_of_r(r)
    )


# --- State construction ------------------------------------------------------


def _series(weight: Callable[[int], float], start: int, alpha: complex, size: int) -> np.ndarray:
    coefficients = np.zeros(size, dtype=np.complex128)
    coefficients[start] = 1.0
    for n in range(start, size - 1):
        coefficients[n + 1] = coefficients[n] * alpha / weight(n + 1)
    return coefficients


def analytic_norm_squared(kind: DeformationKind, r: float) -> float:
    """Squared norm of the bare series: exp(r^2), 0F2(1,1;r^2) or 0F2(1,2;r^2)."""
    if kind is DeformationKind.LINEAR:
        return float(np.exp(r * r))
    if kind is DeformationKind.SHIFTED_NUMBER:
        return hyp0f2_real(1, 1, r * r)
    return hyp0f2_real(1, 2, r * r)


def _check_tail(kind: DeformationKind, alpha: complex, coefficients: np.ndarray) -> None:
    numeric = float(np.vdot(coefficients, coefficients).real)
    analytic = analytic_norm_squared(kind, abs(alpha))
    tail = 1.0 - numeric / analytic
    if tail > config.TAIL_TOLERANCE:
        raise TruncationError(
            f"{kind.name} state at alpha={alpha} loses {tail:.2e} of its norm^2 at dim={coefficients.size}; "
            "increase dim"
        )
    if tail < -config.NORMALIZER_TOLERANCE:
        logging.warning(
            f"{kind.name} series norm^2 {numeric:.15g} exceeds its 0F2 normalizer {analytic:.15g}"
        )


def coherent_series(kind: DeformationKind, alpha: complex, dim: int) -> FockVector:
    """
    The bare (unnormalized) eigenvector series of f(N)a, truncated to `dim`.

    The coefficient of the lowest occupied level is 1, so the squared norm is
    `analytic_norm_squared(kind, |alpha|)` up to the dropped tail.
    """
    alpha = complex(alpha)
    coefficients = _series(lambda n: float(kind.ladder_weight(n)), kind.ground_index, alpha, dim)
    _check_tail(kind, alpha, coefficients)
    return FockVector(coefficients)


def coherent_series_derivative(kind: DeformationKind, alpha: complex, dim: int) -> FockVector:
    """Term-wise d/d(alpha) of `coherent_series`: the level start+n term becomes n c_n / alpha."""
    alpha = complex(alpha)
    start = kind.ground_index
    extended = 2 * dim
    powers = np.clip(np.arange(extended) - start, 0, None)
    if alpha == 0:
        derivative = np.zeros(extended, dtype=np.complex128)
        derivative[start + 1] = 1.0 / float(kind.ladder_weight(start + 1))
    else:
        derivative = powers * _series(lambda n: float(kind.ladder_weight(n)), start, alpha, extended) / alpha
    total = float(np.vdot(derivative, derivative).real)
    tail = float(np.vdot(derivative[dim:], derivative[dim:]).real) / total
    if tail > config.TAIL_TOLERANCE:
        raise TruncationError(
            f"derivative series at alpha={alpha} loses {tail:.2e} of its norm^2 at dim={dim}; increase dim"
        )
    return FockVector(derivative[:dim])


def build_state(label: CoherentLabel, dim: int = config.DEFAULT_DIM) -> FockVector:
    """Normalized coherent state of the label's family."""
    return coherent_series(label.family, label.amplitude, dim).normalized()


def build_general_nlcs(f: Callable[[int], float], alpha: complex, dim: int = config.DEFAULT_DIM) -> FockVector:
    """
    Normalized eigenstate of f(N)a for an arbitrary real function f.

    Two zero patterns are supported: f(n) != 0 for every n (support from |0>)
    and f(0) = 0 with f(n) != 0 for n > 0 (support from |1>). The dropped
    tail is estimated by continuing the series to twice the truncation.
    """
    alpha = complex(alpha)
    extended = 2 * dim
    values = np.array([float(f(n)) for n in range(extended)])
    if np.all(values != 0):
        start = 0
    elif values[0] == 0 and np.all(values[1:] != 0):
        start = 1
    else:
        zeros = np.flatnonzero(values == 0).tolist()
        raise DomainError(f"unsupported zero pattern of f at n = {zeros[:5]}")

    coefficients = _series(lambda n: np.sqrt(n) * values[n - 1], start, alpha, extended)
    total = float(np.vdot(coefficients, coefficients).real)
    kept = coefficients[:dim]
    tail = 1.0 - float(np.vdot(kept, kept).real) / total
    if tail > config.TAIL_TOLERANCE:
        raise TruncationError(f"state at alpha={alpha} loses {tail:.2e} of its norm^2 at dim={dim}")
    return FockVector(kept).normalized()


# --- Moments -------------------------------------------------------------------


def closed_form_moments(label: CoherentLabel) -> UncertaintyReport:
    """Quadrature moments and the uncertainty product from the 0F2 ratio formulas."""
    alpha = label.amplitude
    re, im, r = alpha.real, alpha.imag, label.r

    if label.family is DeformationKind.LINEAR:
        return UncertaintyReport.from_moments(
            mean_x=SQRT2 * re,
            mean_p=SQRT2 * im,
            mean_x2=0.5 + 2.0 * re**2,
            mean_p2=0.5 + 2.0 * im**2,
            var_x=0.5,
            var_p=0.5,
        )

    x = r * r
    if label.family is DeformationKind.SHIFTED_NUMBER:
        ratio = hyp0f2_real(1, 2, x) / hyp0f2_real(1, 1, x)
        beta, sigma, tau = beta_of_r(r), sigma_of_r(r), tau_of_r(r)
        return UncertaintyReport.from_moments(
            mean_x=SQRT2 * re * ratio,
            mean_p=SQRT2 * im * ratio,
            mean_x2=0.5 + re**2 * beta + im**2 * sigma,
            mean_p2=0.5 + re**2 * sigma + im**2 * beta,
            var_x=0.5 - re**2 * tau + im**2 * sigma,
            var_p=0.5 - im**2 * tau + re**2 * sigma,
        )

    f12 = hyp0f2_real(1, 2, x)
    ratio = hyp0f2_real(2, 2, x) / f12
    quadratic = hyp0f2_real(2, 3, x) / f12
    rho = rho_of_r(r)
    return UncertaintyReport.from_moments(
        mean_x=SQRT2 * re * ratio,
        mean_p=SQRT2 * im * ratio,
        mean_x2=1.5 + re**2 * quadratic,
        mean_p2=1.5 + im**2 * quadratic,
        var_x=1.5 - re**2 * rho,
        var_p=1.5 - im**2 * rho,
    )


@dataclass(frozen=True)
class CrossElements:
    """<alpha_1|O|alpha_2> for O in {1, x, x^2, p, p^2, N} between normalized states."""

    overlap: complex
    x: complex
    x2: complex
    p: complex
    p2: complex
    number: complex


def cross_matrix_elements(family: DeformationKind, alpha1: complex, alpha2: complex) -> CrossElements:
    """
    Matrix elements between two normalized coherent states of one family.

    Every 0F2 is evaluated at the complex product w = conj(alpha1) alpha2.
    """
    a1c = complex(alpha1).conjugate()
    a2 = complex(alpha2)
    w = a1c * a2
    plus = a2 + a1c
    minus = a2 - a1c
    squares = a2**2 + a1c**2

    if family is DeformationKind.LINEAR:
        overlap = complex(np.exp(-0.5 * abs(a1c) ** 2 - 0.5 * abs(a2) ** 2 + w))
        return CrossElements(
            overlap=overlap,
            x=plus / SQRT2 * overlap,
            x2=0.5 * (squares + 2.0 * w + 1.0) * overlap,
            p=minus / (1j * SQRT2) * overlap,
            p2=0.5 * (-squares + 2.0 * w + 1.0) * overlap,
            number=w * overlap,
        )

    if family is DeformationKind.SHIFTED_NUMBER:
        norm = np.sqrt(hyp0f2_real(1, 1, abs(a1c) ** 2) * hyp0f2_real(1, 1, abs(a2) ** 2))
        f11, f12, f13, f22 = (hyp0f2(b1, b2, w) for b1, b2 in ((1, 1), (1, 2), (1, 3), (2, 2)))
        return CrossElements(
            overlap=f11 / norm,
            x=plus / SQRT2 * f12 / norm,
            x2=(0.5 * squares * f13 + 2.0 * w * f22 + f11) / (2.0 * norm),
            p=minus / (1j * SQRT2) * f12 / norm,
            p2=(-0.5 * squares * f13 + 2.0 * w * f22 + f11) / (2.0 * norm),
            number=w * f22 / norm,
        )

    norm = np.sqrt(hyp0f2_real(1, 2, abs(a1c) ** 2) * hyp0f2_real(1, 2, abs(a2) ** 2))
    f12, f22, f23 = (hyp0f2(b1, b2, w) for b1, b2 in ((1, 2), (2, 2), (2, 3)))
    return CrossElements(
        overlap=f12 / norm,
        x=plus / SQRT2 * f22 / norm,
        x2=(0.5 * plus**2 * f23 + 3.0 * f12) / (2.0 * norm),
        p=minus / (1j * SQRT2) * f22 / norm,
        p2=(-0.5 * minus**2 * f23 + 3.0 * f12) / (2.0 * norm),
        number=(f12 + 0.5 * w * f23) / norm,
    )


def oracle_moments(state: State) -> UncertaintyReport:
    """Truncated-matrix moments of any scalar or spinor state."""
    position, momentum = quadrature_matrices(state.dim)
    mean_x = expectation(position, state).real
    mean_p = expectation(momentum, state).real
    mean_x2 = expectation(position @ position, state).real
    mean_p2 = expectation(momentum @ momentum, state).real
    return UncertaintyReport.from_moments(mean_x, mean_p, mean_x2, mean_p2)
