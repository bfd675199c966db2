# src/susy.py

"""
The supersymmetric harmonic oscillator and its family of annihilation operators.

The Hamiltonian acts on two-component states as omega * diag(N, N + 1). The
operators

    A = [[k1 a, k2 I], [k3 a^2, k4 a]]

(with a replaced by a deformed f(N)a for the nonlinear families) all satisfy
[H, A] = -omega A. Their eigenstates fall into three families fixed by the
eigenvalues kappa_+/- of the 2x2 parameter matrix K.
"""

import cmath
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

import numpy as np
from scipy import linalg

from src import config
from src.errors import DomainError
from src.fock import (
    DeformationKind,
    OperatorMatrix,
    check_dim,
    deformed_lowering,
    edge_rows,
)


class KFamily(str, Enum):
    GENERIC = "generic"
    DEGENERATE = "degenerate"
    SINGULAR = "singular"


@dataclass(frozen=True)
class KMatrix:
    """Parameter matrix [[k1, k2], [k3, k4]] with its eigenvalues and family tag."""

    k1: complex
    k2: complex
    k3: complex
    k4: complex
    kappa_plus: complex = field(compare=False)
    kappa_minus: complex = field(compare=False)
    family: KFamily = field(compare=False)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.k1, self.k2], [self.k3, self.k4]], dtype=np.complex128)

    @property
    def trace(self) -> complex:
        return self.k1 + self.k4

    @property
    def determinant(self) -> complex:
        return self.k1 * self.k4 - self.k2 * self.k3

    @property
    def discriminant(self) -> complex:
        return (self.k1 - self.k4) ** 2 + 4.0 * self.k2 * self.k3

    @property
    def kappa(self) -> complex:
        """Mean eigenvalue (k1 + k4)/2; the double eigenvalue of a degenerate K."""
        return 0.5 * self.trace

    @property
    def splitting(self) -> complex:
        return self.kappa_plus - self.kappa_minus

    def is_near_degenerate(self, switch: float = config.DEGENERATE_SWITCH) -> bool:
        scale = abs(self.kappa_plus) + abs(self.kappa_minus)
        return scale > 0 and abs(self.splitting) < switch * scale


def kappa_pair(k1: complex, k2: complex, k3: complex, k4: complex) -> Tuple[complex, complex]:
    """(k1 + k4)/2 +/- sqrt((k1 - k4)^2/4 + k2 k3) with the principal square root."""
    root = cmath.sqrt(0.25 * (k1 - k4) ** 2 + k2 * k3)
    mean = 0.5 * (k1 + k4)
    return mean + root, mean - root


def classify(
    k1: complex,
    k2: complex,
    k3: complex,
    k4: complex,
    tolerance: float = config.CLASSIFY_TOLERANCE,
) -> KMatrix:
    """
    Builds a KMatrix and tags its family.

    The degenerate test runs first: |(k1 - k4)^2 + 4 k2 k3| below
    tolerance * (|k1| + |k4|)^2 with a nonzero double eigenvalue. A matrix is
    singular when |kappa_+ kappa_-| falls below
    tolerance * max(1, |kappa_+|^2, |kappa_-|^2). Everything else is generic.
    """
    k1, k2, k3, k4 = (complex(k) for k in (k1, k2, k3, k4))
    if not all(cmath.isfinite(k) for k in (k1, k2, k3, k4)):
        raise DomainError(f"K entries must be finite, got {(k1, k2, k3, k4)}")

    kappa_plus, kappa_minus = kappa_pair(k1, k2, k3, k4)
    mean = 0.5 * (k1 + k4)
    discriminant = (k1 - k4) ** 2 + 4.0 * k2 * k3

    if abs(discriminant) < tolerance * (abs(k1) + abs(k4)) ** 2 and abs(mean) > 0:
        family = KFamily.DEGENERATE
        kappa_plus = kappa_minus = mean
    elif abs(kappa_plus * kappa_minus) < tolerance * max(1.0, abs(kappa_plus) ** 2, abs(kappa_minus) ** 2):
        family = KFamily.SINGULAR
    else:
        family = KFamily.GENERIC

    logging.debug(f"K = {(k1, k2, k3, k4)}: kappa = ({kappa_plus}, {kappa_minus}), {family.value}")
    return KMatrix(k1, k2, k3, k4, kappa_plus=kappa_plus, kappa_minus=kappa_minus, family=family)


def theta_family(theta: float, tolerance: float = config.CLASSIFY_TOLERANCE) -> KMatrix:
    """K = [[1, cos theta], [sin theta, 1]], the one-parameter family used by the figure scans."""
    return classify(1.0, np.cos(theta), np.sin(theta), 1.0, tolerance)


def susy_hamiltonian(omega: float = config.OMEGA, dim: int = config.DEFAULT_DIM) -> OperatorMatrix:
    """
    omega * diag(N, N + 1) on the 2dim-dimensional spinor space.

    The lower block is built as N + 1 directly rather than as a truncated
    a a^dagger, so the truncated spectrum has no spurious zero at the edge.
    """
    if not (np.isfinite(omega) and omega > 0):
        raise DomainError(f"omega must be positive, got {omega}")
    check_dim(dim)
    levels = np.arange(dim, dtype=float)
    return np.diag(omega * np.concatenate([levels, levels + 1.0])).astype(np.complex128)


def hamiltonian_spectrum(omega: float = config.OMEGA, dim: int = config.DEFAULT_DIM) -> np.ndarray:
    """Sorted eigenvalues of the truncated SUSY Hamiltonian."""
    return linalg.eigvalsh(susy_hamiltonian(omega, dim))


def sao_matrix(K: KMatrix, kind: DeformationKind, dim: int = config.DEFAULT_DIM) -> OperatorMatrix:
    """Block matrix [[k1 a~, k2 I], [k3 a~^2, k4 a~]] with a~ = f(N)a of the given kind."""
    check_dim(dim, minimum=3)
    lowering = deformed_lowering(kind, dim)
    operator = np.zeros((2 * dim, 2 * dim), dtype=np.complex128)
    operator[:dim, :dim] = K.k1 * lowering
    operator[:dim, dim:] = K.k2 * np.eye(dim)
    operator[dim:, :dim] = K.k3 * (lowering @ lowering)
    operator[dim:, dim:] = K.k4 * lowering
    return operator


def commutator_residual(
    hamiltonian: OperatorMatrix,
    operator: OperatorMatrix,
    omega: float = config.OMEGA,
    margin: int = config.EDGE_MARGIN,
) -> float:
    """
    Largest entry of [H, A] + omega A away from the last `margin` levels of each block.

    H must be diagonal. Entry (i, j) is then (E_i - E_j + omega) A_ij, which
    avoids the matrix products whose rounding grows with the deformed entries.
    """
    energies = np.diag(hamiltonian)
    if np.count_nonzero(hamiltonian - np.diag(energies)):
        raise DomainError("commutator_residual expects a diagonal Hamiltonian")
    difference = (energies[:, None] - energies[None, :] + omega) * operator
    dim = hamiltonian.shape[0] // 2
    kept = np.setdiff1d(np.arange(2 * dim), edge_rows(dim, blocks=2, margin=margin))
    return float(np.max(np.abs(difference[np.ix_(kept, kept)])))
