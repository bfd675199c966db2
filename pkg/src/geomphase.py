# src/geomphase.py

"""
Evolution loops and geometric phases of supercoherent states.

The SUSY Hamiltonian has an integer spectrum in units of omega, so every state
returns to itself (up to a phase) after tau = 2 pi / omega. The total phase
of such a loop is 0 mod 2 pi, which leaves the geometric phase
beta = tau <H>. Closed forms use the 0F2 cross elements of the |phi_+/-> pair;
the oracle path takes <H> from the truncated matrix.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg

from src import config
from src.errors import DomainError
from src.fock import DeformationKind, SpinorState, expectation
from src.supercoherent import (
    MomentWeights,
    SuperCoherentSpec,
    SuperpositionParams,
    require_family,
    branch_elements,
)
from src.susy import KFamily, susy_hamiltonian


@dataclass(frozen=True)
class GeometricPhaseResult:
    """beta = total_phase + tau * mean_energy, reported unwrapped."""

    beta: float
    total_phase: float
    tau: float
    mean_energy: float


def loop_period(omega: float = config.OMEGA) -> float:
    if not (np.isfinite(omega) and omega > 0):
        raise DomainError(f"omega must be positive, got {omega}")
    return 2.0 * np.pi / omega


def phase_from_energy(mean_energy: float, omega: float = config.OMEGA) -> GeometricPhaseResult:
    tau = loop_period(omega)
    return GeometricPhaseResult(beta=tau * mean_energy, total_phase=0.0, tau=tau, mean_energy=mean_energy)


def evolution_loop_check(
    omega: float = config.OMEGA, dim: int = config.DEFAULT_DIM, tau: Optional[float] = None
) -> float:
    """
    Largest entry of |exp(-i H tau) - I| for the truncated SUSY Hamiltonian.

    The propagator is assembled from the eigendecomposition of H. With the
    default tau = 2 pi / omega the result is zero up to rounding.
    """
    tau = loop_period(omega) if tau is None else float(tau)
    energies, vectors = linalg.eigh(susy_hamiltonian(omega, dim))
    propagator = (vectors * np.exp(-1j * energies * tau)) @ vectors.conj().T
    residual = float(np.max(np.abs(propagator - np.eye(2 * dim))))
    logging.debug(f"evolution loop at tau={tau:.6g}, dim={dim}: residual {residual:.3e}")
    return residual


def geometric_phase_oracle(state: SpinorState, omega: float = config.OMEGA) -> GeometricPhaseResult:
    """beta from the normalized truncated-matrix expectation of H."""
    if not state.norm_squared > 0:
        raise DomainError("geometric phase of a zero state")
    mean_energy = expectation(susy_hamiltonian(omega, state.dim), state).real
    return phase_from_energy(mean_energy, omega)


def closed_form_energy(
    spec: SuperCoherentSpec,
    params: SuperpositionParams,
    omega: float = config.OMEGA,
    as_printed: bool = False,
) -> float:
    """
    <H> of the normalized superposition.

    N acts on both components and the lower one carries an extra omega, so

        <H>/omega = [sum_ab (g1a* g1b + |Y|^2 g2a* g2b) N_ab
                     + |Y|^2 sum_ab g2a* g2b O_ab] / delta

    with N_ab and O_ab the number and overlap elements of the normalized
    |phi_+/-> pair. `as_printed=True` drops O_+- from the cross term of the
    second sum, as the published expressions do.
    """
    require_family(spec, KFamily.GENERIC)
    elements = branch_elements(spec)
    overlap = elements.cross.overlap
    weights = MomentWeights.build(spec, params, overlap)
    number = weights.combine(elements.plus.number, elements.minus.number, elements.cross.number)

    _, _, g2p, g2m = params.gammas(spec.K)
    y2 = abs(spec.eigenvalue) ** 2
    cross = g2p.conjugate() * g2m * (1.0 if as_printed else overlap)
    offset = y2 * (abs(g2p) ** 2 + abs(g2m) ** 2 + 2.0 * cross.real) / weights.delta
    return omega * (number + offset)


def closed_form_phase(
    spec: SuperCoherentSpec,
    params: SuperpositionParams,
    omega: float = config.OMEGA,
    as_printed: bool = False,
) -> GeometricPhaseResult:
    """Closed-form geometric phase for any deformation kind in the generic family."""
    energy = closed_form_energy(spec, params, omega)
    if as_printed:
        printed = closed_form_energy(spec, params, omega, as_printed=True)
        difference = loop_period(omega) * (printed - energy)
        if abs(difference) > config.ORACLE_AGREEMENT:
            logging.warning(
                f"printed phase formula differs from the exact one by {difference:.3e} rad "
                f"at eigenvalue {spec.eigenvalue}"
            )
        energy = printed
    return phase_from_energy(energy, omega)


def _require_kind(spec: SuperCoherentSpec, kind: DeformationKind) -> None:
    if spec.kind is not kind:
        raise DomainError(f"expected the {kind.name} deformation, got {spec.kind.name}")


def beta_nl(
    spec: SuperCoherentSpec, params: SuperpositionParams, omega: float = config.OMEGA, as_printed: bool = False
) -> GeometricPhaseResult:
    """Geometric phase of the f(N) = N + 1 superpositions; tends to 0 as Y -> 0."""
    _require_kind(spec, DeformationKind.SHIFTED_NUMBER)
    return closed_form_phase(spec, params, omega, as_printed)


def beta_NL(
    spec: SuperCoherentSpec, params: SuperpositionParams, omega: float = config.OMEGA, as_printed: bool = False
) -> GeometricPhaseResult:
    """Geometric phase of the f(N) = N superpositions; at least 2 pi since E >= omega."""
    _require_kind(spec, DeformationKind.NUMBER)
    return closed_form_phase(spec, params, omega, as_printed)


def beta_linear(
    spec: SuperCoherentSpec, params: SuperpositionParams, omega: float = config.OMEGA, as_printed: bool = False
) -> GeometricPhaseResult:
    _require_kind(spec, DeformationKind.LINEAR)
    return closed_form_phase(spec, params, omega, as_printed)
