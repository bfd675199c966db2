# src/supercoherent.py

"""
Supercoherent states: eigenstates of the block annihilation operators of the
SUSY oscillator, built from pairs of (nonlinear) coherent states.

For an eigenvalue Y the spinor components are combinations of the coherent
states |phi_+/-> with phi_+/- = Y / kappa_+/-. Depending on the family of K the
construction goes through

- the generic pair |Y+/->, or the free-parameter A/C basis,
- the degenerate formulas, which need the derivative series d/dphi,
- the single singular-family state with phi = Y/(k1 + k4).

`recurrence_solve` builds the same states coefficient by coefficient and is
the cross-check for all of the above.
"""

import cmath
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src import config
from src.coherent import (
    CoherentLabel,
    CrossElements,
    UncertaintyReport,
    build_state,
    coherent_series,
    coherent_series_derivative,
    cross_matrix_elements,
    oracle_moments,
)
from src.errors import DomainError, FamilyError, SingularFamilyError
from src.fock import DeformationKind, FockVector, SpinorState, check_dim
from src.susy import KFamily, KMatrix

SpinorPair = Tuple[SpinorState, SpinorState]


@dataclass(frozen=True)
class SuperCoherentSpec:
    """K matrix, deformation kind and the eigenvalue (Y, Z or z depending on the kind)."""

    K: KMatrix
    kind: DeformationKind
    eigenvalue: complex

    def __post_init__(self) -> None:
        eigenvalue = complex(self.eigenvalue)
        if not cmath.isfinite(eigenvalue):
            raise DomainError(f"eigenvalue {eigenvalue} is not finite")
        object.__setattr__(self, "eigenvalue", eigenvalue)

    @property
    def phi_plus(self) -> complex:
        return self._ratio(self.K.kappa_plus)

    @property
    def phi_minus(self) -> complex:
        return self._ratio(self.K.kappa_minus)

    @property
    def phi_singular(self) -> complex:
        return self._ratio(self.K.trace)

    def _ratio(self, kappa: complex) -> complex:
        if kappa == 0:
            raise DomainError(f"eigenvalue ratio undefined: kappa = 0 for K = {self.K.matrix.tolist()}")
        return self.eigenvalue / kappa


def branch_prefactors(K: KMatrix, kappa: complex) -> Tuple[complex, complex]:
    """
    (upper, lower / Y) prefactors of |phi> in the generic state built on kappa.

    The state is kappa (v1 |phi>, v2 phi |phi>) for an eigenvector v of K. The
    column (k2, kappa - k1) is used unless it vanishes (k2 = 0 and kappa = k1),
    in which case (kappa - k4, k3) takes over.
    """
    scale = config.CLASSIFY_TOLERANCE * max(1.0, abs(K.k1), abs(K.k2), abs(K.k3), abs(K.k4))
    if abs(K.k2) + abs(kappa - K.k1) > scale:
        return K.k2 * kappa, kappa - K.k1
    if abs(kappa - K.k4) + abs(K.k3) > scale:
        return kappa * (kappa - K.k4), K.k3
    raise FamilyError(f"no eigenvector of K = {K.matrix.tolist()} for kappa = {kappa}")


@dataclass(frozen=True)
class SuperpositionParams:
    """cos(eta)|+> + exp(i lambda) sin(eta)|->."""

    eta: float = config.DEFAULT_ETA
    lam: float = config.DEFAULT_LAMBDA

    @property
    def weights(self) -> Tuple[complex, complex]:
        return complex(np.cos(self.eta)), complex(np.exp(1j * self.lam) * np.sin(self.eta))

    def gammas(self, K: KMatrix) -> Tuple[complex, complex, complex, complex]:
        """(gamma_1+, gamma_1-, gamma_2+, gamma_2-): upper and lower prefactors of |phi_+/->."""
        plus, minus = self.weights
        upper_plus, lower_plus = branch_prefactors(K, K.kappa_plus)
        upper_minus, lower_minus = branch_prefactors(K, K.kappa_minus)
        return upper_plus * plus, upper_minus * minus, lower_plus * plus, lower_minus * minus


@dataclass(frozen=True)
class MomentWeights:
    """
    Gram weights of the superposition in the normalized |phi_+/-> pair.

    <S|O|S> = Gamma_plus O_++ + Gamma_minus O_-- + 2 Re(Gamma_pm O_+-) for an
    operator acting identically on both components; delta is <S|S>.
    """

    gamma_plus: float
    gamma_minus: float
    gamma_pm: complex
    delta: float

    @classmethod
    def build(cls, spec: SuperCoherentSpec, params: SuperpositionParams, overlap: complex) -> "MomentWeights":
        g1p, g1m, g2p, g2m = params.gammas(spec.K)
        y2 = abs(spec.eigenvalue) ** 2
        gamma_plus = abs(g1p) ** 2 + y2 * abs(g2p) ** 2
        gamma_minus = abs(g1m) ** 2 + y2 * abs(g2m) ** 2
        gamma_pm = g1p.conjugate() * g1m + y2 * g2p.conjugate() * g2m
        delta = gamma_plus + gamma_minus + 2.0 * (gamma_pm * overlap).real
        if not delta > 0:
            raise DomainError(f"superposition has zero norm (delta = {delta})")
        return cls(gamma_plus=gamma_plus, gamma_minus=gamma_minus, gamma_pm=gamma_pm, delta=delta)

    def combine(self, plus: complex, minus: complex, cross: complex) -> float:
        """Normalized expectation from the diagonal and cross elements of one operator."""
        total = self.gamma_plus * plus.real + self.gamma_minus * minus.real + 2.0 * (self.gamma_pm * cross).real
        return total / self.delta


def require_family(spec: SuperCoherentSpec, *families: KFamily) -> None:
    if spec.K.family not in families:
        allowed = ", ".join(f.value for f in families)
        raise FamilyError(f"K family is {spec.K.family.value}; this construction needs {allowed}")


# --- Coefficient recurrence ------------------------------------------------------


def recurrence_solve(
    spec: SuperCoherentSpec,
    free_params: Tuple[complex, complex],
    dim: int = config.DEFAULT_DIM,
    n_terms: Optional[int] = None,
) -> SpinorState:
    """
    Forward solution of the eigenvalue equation, coefficient by coefficient.

    The free parameters are the raw leading coefficients: (s0, t1) at upper[0]
    and lower[0] for LINEAR and SHIFTED_NUMBER, (u1, v2) at upper[1] and
    lower[1] for NUMBER, whose upper[0] and lower[0] vanish. With w(n) the
    ladder weight, each step solves

        K (w(m+1) u[m+1], l[m]) = (Y u[m], Y l[m-1] / w(m)).

    Args:
        spec (SuperCoherentSpec): K, deformation kind and eigenvalue.
        free_params (Tuple[complex, complex]): Leading upper and lower coefficients.
        dim (int): Truncation of each component.
        n_terms (int | None): Number of levels to fill; defaults to dim.

    Returns:
        SpinorState: The unnormalized eigenstate.

    Raises:
        SingularFamilyError: K is not invertible.
        FamilyError: k1 = 0, so the first upper step is undetermined.
    """
    check_dim(dim)
    K, kind, y = spec.K, spec.kind, spec.eigenvalue
    if K.family is KFamily.SINGULAR or K.determinant == 0:
        raise SingularFamilyError("K is singular; use build_singular")
    if K.k1 == 0:
        raise FamilyError("k1 = 0 leaves the first recurrence step undetermined")
    n_terms = dim if n_terms is None else int(n_terms)
    if not 1 <= n_terms <= dim:
        raise DomainError(f"n_terms must lie in [1, {dim}], got {n_terms}")

    inverse = np.linalg.inv(K.matrix)
    start = kind.ground_index
    upper = np.zeros(dim, dtype=np.complex128)
    lower = np.zeros(dim, dtype=np.complex128)
    upper[start], lower[start] = free_params

    def weight(n: int) -> float:
        return float(kind.ladder_weight(n))

    if start + 1 < n_terms:
        upper[start + 1] = (y * upper[start] - K.k2 * lower[start]) / (K.k1 * weight(start + 1))
    for m in range(start + 1, n_terms):
        scaled_upper, lower[m] = inverse @ np.array([y * upper[m], y * lower[m - 1] / weight(m)])
        if m + 1 < n_terms:
            upper[m + 1] = scaled_upper / weight(m + 1)

    return SpinorState(FockVector(upper), FockVector(lower))


# --- Closed-form constructions ---------------------------------------------------


def build_generic(spec: SuperCoherentSpec, dim: int = config.DEFAULT_DIM) -> SpinorPair:
    """
    The pair |Y+/-> = (k2 kappa |phi>, (kappa - k1) Y |phi>) for kappa = kappa_+/-.

    |phi_+/-> are the normalized coherent states of the requested kind; the spinors
    themselves are left unnormalized. When k2 = 0 the branch with kappa = k1
    uses (kappa (kappa - k4) |phi>, k3 Y |phi>) instead.
    """
    require_family(spec, KFamily.GENERIC)
    K, y = spec.K, spec.eigenvalue
    states = []
    for kappa, phi in ((K.kappa_plus, spec.phi_plus), (K.kappa_minus, spec.phi_minus)):
        upper, lower = branch_prefactors(K, kappa)
        coherent = build_state(CoherentLabel(phi, spec.kind), dim)
        states.append(SpinorState(coherent.scaled(upper), coherent.scaled(lower * y)))
    return states[0], states[1]


def a_c_pair(spec: SuperCoherentSpec, dim: int = config.DEFAULT_DIM) -> SpinorPair:
    """
    The basis states |Y_A>, |Y_C> built from the bare series of phi_+/-.

    Their leading coefficients are k1 (upper) and k1 Y (lower) respectively,
    so s0' |Y_A> + t1' |Y_C> is the recurrence solution with s0 = k1 s0' and
    t1 = k1 Y t1'.
    """
    require_family(spec, KFamily.GENERIC)
    K, y = spec.K, spec.eigenvalue
    kp, km = K.kappa_plus, K.kappa_minus
    ep = coherent_series(spec.kind, spec.phi_plus, dim)
    em = coherent_series(spec.kind, spec.phi_minus, dim)
    scale = 1.0 / (kp - km)
    shifted = K.k1**2 + K.k2 * K.k3

    state_a = SpinorState(
        (ep.scaled(kp * (kp - K.k4)) + em.scaled(-km * (km - K.k4))).scaled(scale),
        (ep + em.scaled(-1.0)).scaled(K.k3 * y * scale),
    )
    state_c = SpinorState(
        (ep + em.scaled(-1.0)).scaled(K.k2 * kp * km * scale),
        (ep.scaled(K.k1 * kp - shifted) + em.scaled(-(K.k1 * km - shifted))).scaled(y * scale),
    )
    return state_a, state_c


def build_A_C_basis(
    spec: SuperCoherentSpec, s0p: complex, t1p: complex, dim: int = config.DEFAULT_DIM
) -> SpinorState:
    """s0' |Y_A> + t1' |Y_C> in the generic family."""
    state_a, state_c = a_c_pair(spec, dim)
    return state_a.scaled(s0p) + state_c.scaled(t1p)


def build_degenerate(
    spec: SuperCoherentSpec, s0p: complex, t1p: complex, dim: int = config.DEFAULT_DIM
) -> SpinorState:
    """
    Eigenstate for a K with a double eigenvalue kappa.

    With phi = Y/kappa, e the bare series and e' its term-wise derivative in
    phi, the two basis states are

        |A> = (k1 e - (kappa - k4) phi e', -k3 phi^2 e')
        |C> = kappa (-k2 phi e', k1 phi e - (k4 - k1)/2 phi^2 e')

    and the state is s0' |A> + t1' |C>. The derivative is taken on the
    bare series, not on the normalized state.
    Generic matrices within the degenerate switch are accepted and treated as
    degenerate.
    """
    K = spec.K
    if K.family is not KFamily.DEGENERATE and not (K.family is KFamily.GENERIC and K.is_near_degenerate()):
        raise FamilyError(f"K family is {K.family.value}; build_degenerate needs a double eigenvalue")
    kappa = K.kappa
    if kappa == 0:
        raise DomainError("degenerate construction needs kappa != 0")
    phi = spec.eigenvalue / kappa
    series = coherent_series(spec.kind, phi, dim)
    derivative = coherent_series_derivative(spec.kind, phi, dim)

    state_a = SpinorState(
        series.scaled(K.k1) + derivative.scaled(-(kappa - K.k4) * phi),
        derivative.scaled(-K.k3 * phi**2),
    )
    state_c = SpinorState(
        derivative.scaled(-kappa * K.k2 * phi),
        series.scaled(kappa * K.k1 * phi) + derivative.scaled(-kappa * 0.5 * (K.k4 - K.k1) * phi**2),
    )
    return state_a.scaled(s0p) + state_c.scaled(t1p)


def build_singular(spec: SuperCoherentSpec, dim: int = config.DEFAULT_DIM) -> SpinorState:
    """(k1 |phi>, k3 phi |phi>) with phi = Y/(k1 + k4) for a singular K."""
    require_family(spec, KFamily.SINGULAR)
    K = spec.K
    if K.trace == 0:
        raise DomainError("singular construction needs k1 + k4 != 0")
    phi = spec.phi_singular
    coherent = build_state(CoherentLabel(phi, spec.kind), dim)
    if K.k1 == 0 and K.k3 == 0:
        # first column of K vanishes; the second one spans the eigenvector
        return SpinorState(coherent.scaled(K.k2), coherent.scaled(K.k4 * phi))
    return SpinorState(coherent.scaled(K.k1), coherent.scaled(K.k3 * phi))


def build_supercoherent(
    spec: SuperCoherentSpec, s0p: complex = 1.0, t1p: complex = 0.0, dim: int = config.DEFAULT_DIM
) -> SpinorState:
    """Routes the free-parameter construction by family and the degenerate switch."""
    family = spec.K.family
    if family is KFamily.SINGULAR:
        logging.debug("singular K: free parameters ignored, the eigenspace is one-dimensional")
        return build_singular(spec, dim)
    if family is KFamily.DEGENERATE or spec.K.is_near_degenerate():
        return build_degenerate(spec, s0p, t1p, dim)
    return build_A_C_basis(spec, s0p, t1p, dim)


def superpose(pair: SpinorPair, params: SuperpositionParams) -> SpinorState:
    """cos(eta)|+> + exp(i lambda) sin(eta)|->."""
    plus, minus = pair
    if plus.dim != minus.dim:
        raise DomainError(f"dimension mismatch: {plus.dim} vs {minus.dim}")
    weight_plus, weight_minus = params.weights
    return plus.scaled(weight_plus) + minus.scaled(weight_minus)


def build_superposition(
    spec: SuperCoherentSpec, params: SuperpositionParams, dim: int = config.DEFAULT_DIM
) -> SpinorState:
    return superpose(build_generic(spec, dim), params)


# --- Moments -----------------------------------------------------------------------


@dataclass(frozen=True)
class BranchElements:
    """Cross elements of the normalized |phi_+>, |phi_-> pair for one spec."""

    plus: CrossElements
    minus: CrossElements
    cross: CrossElements


def branch_elements(spec: SuperCoherentSpec) -> BranchElements:
    phi_plus, phi_minus = spec.phi_plus, spec.phi_minus
    return BranchElements(
        plus=cross_matrix_elements(spec.kind, phi_plus, phi_plus),
        minus=cross_matrix_elements(spec.kind, phi_minus, phi_minus),
        cross=cross_matrix_elements(spec.kind, phi_plus, phi_minus),
    )


def closed_form_spinor_moments(spec: SuperCoherentSpec, params: SuperpositionParams) -> UncertaintyReport:
    """
    Quadrature moments of the normalized superposition from 0F2 cross elements.

    Both quadratures act identically on the two components, so every moment is
    the Gamma-weighted sum over the |phi_+/-> pair divided by delta.
    """
    require_family(spec, KFamily.GENERIC)
    elements = branch_elements(spec)
    weights = MomentWeights.build(spec, params, elements.cross.overlap)

    def moment(name: str) -> float:
        return weights.combine(
            getattr(elements.plus, name), getattr(elements.minus, name), getattr(elements.cross, name)
        )

    return UncertaintyReport.from_moments(
        mean_x=moment("x"), mean_p=moment("p"), mean_x2=moment("x2"), mean_p2=moment("p2")
    )


def oracle_spinor_moments(state: SpinorState) -> UncertaintyReport:
    """Truncated-matrix moments; the only moment path for degenerate and singular K."""
    if not isinstance(state, SpinorState):
        raise DomainError(f"expected a SpinorState, got {type(state).__name__}")
    return oracle_moments(state)
