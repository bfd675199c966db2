# src/validation.py

"""
Invariant suite: every closed form against its truncated-matrix oracle, plus
the limits, bounds and structural identities the constructions must satisfy.

Random K matrices and eigenvalues are drawn from a seeded numpy Generator, so a
run is fully determined by (dim, seed). A failing check never raises; its
message explains what went wrong.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from src import config
from src.coherent import CoherentLabel, build_state, closed_form_moments, oracle_moments
from src.errors import SupercoherentError
from src.fock import DeformationKind, eigen_residual, state_distance
from src.geomphase import closed_form_phase, evolution_loop_check, geometric_phase_oracle
from src.hypergeom import fixed_length_sum, hyp0f2
from src.supercoherent import (
    SuperCoherentSpec,
    SuperpositionParams,
    build_A_C_basis,
    build_degenerate,
    build_generic,
    build_singular,
    build_superposition,
    closed_form_spinor_moments,
    oracle_spinor_moments,
    recurrence_solve,
    superpose,
)
from src.susy import KMatrix, classify, commutator_residual, sao_matrix, susy_hamiltonian, theta_family

KINDS = (DeformationKind.LINEAR, DeformationKind.SHIFTED_NUMBER, DeformationKind.NUMBER)
DEFORMED = (DeformationKind.SHIFTED_NUMBER, DeformationKind.NUMBER)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    threshold: float
    message: str = ""


def random_generic_k(rng: np.random.Generator) -> KMatrix:
    """K with diagonal near 1 and small off-diagonal entries, so |kappa_+/-| stays above ~0.2."""
    diagonal = rng.uniform(0.7, 1.3, size=2) + 1j * rng.uniform(-0.2, 0.2, size=2)
    off = rng.uniform(-0.25, 0.25, size=2) + 1j * rng.uniform(-0.25, 0.25, size=2)
    return classify(diagonal[0], off[0], off[1], diagonal[1])


def random_eigenvalue(rng: np.random.Generator, modulus: float = 0.8) -> complex:
    return complex(modulus * np.exp(1j * rng.uniform(0, 2 * np.pi)))


def _worst(name: str, values: List[float], threshold: float) -> CheckResult:
    worst = float(np.max(values)) if values else 0.0
    passed = worst < threshold
    message = "" if passed else f"largest deviation {worst:.3e} exceeds {threshold:.1e}"
    return CheckResult(name=name, passed=passed, value=worst, threshold=threshold, message=message)


# --- Individual checks ------------------------------------------------------------
# Each takes (dim, rng) and returns a CheckResult.


def check_hypergeom(dim: int, rng: np.random.Generator) -> CheckResult:
    deviations = []
    for b1, b2 in ((1, 1), (1, 2), (1, 3), (2, 2), (2, 3)):
        for x in (0.0, 0.5, 2.0 + 1.0j, 9.0, -4.0):
            reference = fixed_length_sum((), (b1, b2), x, n_terms=400)
            deviations.append(abs(hyp0f2(b1, b2, x) - reference) / max(1.0, abs(reference)))
    return _worst("0F2 series vs fixed-length sum", deviations, 1e-12)


def check_scalar_limits(dim: int, rng: np.random.Generator) -> CheckResult:
    shifted = closed_form_moments(CoherentLabel(0.0, DeformationKind.SHIFTED_NUMBER)).product
    number = closed_form_moments(CoherentLabel(0.0, DeformationKind.NUMBER)).product
    return _worst("scalar products at alpha = 0 (1/2 and 3/2)", [abs(shifted - 0.5), abs(number - 1.5)], 1e-10)


def check_linear_baseline(dim: int, rng: np.random.Generator) -> CheckResult:
    deviations = []
    for _ in range(25):
        alpha = rng.uniform(0, 3) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        deviations.append(abs(closed_form_moments(CoherentLabel(alpha, DeformationKind.LINEAR)).product - 0.5))
    return _worst("standard coherent product = 1/2", deviations, 1e-10)


def check_scalar_oracle(dim: int, rng: np.random.Generator) -> CheckResult:
    deviations = []
    axis = np.linspace(-1.5, 1.5, 5)
    for kind in KINDS:
        for re in axis:
            for im in axis:
                label = CoherentLabel(complex(re, im), kind)
                closed = closed_form_moments(label)
                oracle = oracle_moments(build_state(label, dim))
                deviations.append(
                    max(
                        abs(closed.mean_x - oracle.mean_x),
                        abs(closed.mean_p - oracle.mean_p),
                        abs(closed.var_x - oracle.var_x),
                        abs(closed.var_p - oracle.var_p),
                    )
                )
    return _worst("scalar closed-form moments vs truncated matrices", deviations, 1e-8)


def _test_specs(rng: np.random.Generator) -> List[SuperCoherentSpec]:
    specs = []
    for kind in KINDS:
        for _ in range(20):
            specs.append(SuperCoherentSpec(random_generic_k(rng), kind, random_eigenvalue(rng)))
        for theta in (np.pi / 4, 3 * np.pi / 4):
            specs.append(SuperCoherentSpec(theta_family(theta), kind, 0.7 + 0.3j))
    return specs


def check_eigen_residuals(dim: int, rng: np.random.Generator) -> CheckResult:
    residuals = []
    for spec in _test_specs(rng):
        operator = sao_matrix(spec.K, spec.kind, dim)
        plus, minus = build_generic(spec, dim)
        for state in (plus, minus, build_A_C_basis(spec, 0.6, -0.4j, dim)):
            residuals.append(eigen_residual(operator, state, spec.eigenvalue))
    singular = [classify(1.0, 2.0, 0.5, 1.0), classify(2.0, 1.0, 0.0, 0.0)]
    for kind in KINDS:
        for K in singular:
            spec = SuperCoherentSpec(K, kind, 0.9 - 0.2j)
            residuals.append(eigen_residual(sao_matrix(K, kind, dim), build_singular(spec, dim), spec.eigenvalue))
    return _worst("eigen-residuals (generic, A/C, singular)", residuals, config.RESIDUAL_TOLERANCE)


def check_degenerate_residuals(dim: int, rng: np.random.Generator) -> CheckResult:
    residuals = []
    for kind in KINDS:
        for K in (classify(1.0, 1.0, 0.0, 1.0), classify(1.0, 0.5, -0.5, 2.0)):
            spec = SuperCoherentSpec(K, kind, 0.8 + 0.4j)
            state = build_degenerate(spec, 1.0, 0.5, dim)
            residuals.append(eigen_residual(sao_matrix(K, kind, dim), state, spec.eigenvalue))
    return _worst("eigen-residuals (degenerate)", residuals, config.DEGENERATE_RESIDUAL_TOLERANCE)


def check_commutators(dim: int, rng: np.random.Generator) -> CheckResult:
    hamiltonian = susy_hamiltonian(config.OMEGA, dim)
    values = []
    for kind in KINDS:
        for _ in range(20):
            values.append(commutator_residual(hamiltonian, sao_matrix(random_generic_k(rng), kind, dim)))
    return _worst("[H, A] + omega A = 0", values, config.COMMUTATOR_TOLERANCE)


def check_recurrence(dim: int, rng: np.random.Generator) -> CheckResult:
    distances = []
    for kind in KINDS:
        spec = SuperCoherentSpec(theta_family(np.pi / 4), kind, 1.0)
        s0p, t1p = 1.0, 0.3
        K = spec.K
        solved = recurrence_solve(spec, (K.k1 * s0p, spec.eigenvalue * K.k1 * t1p), dim)
        built = build_A_C_basis(spec, s0p, t1p, dim)
        scale = float(np.max(np.abs(built.vector)))
        distances.append(float(np.max(np.abs(solved.vector - built.vector))) / scale)
    return _worst("recurrence vs A/C basis coefficients", distances, 1e-10)


def check_spinor_limits(dim: int, rng: np.random.Generator) -> CheckResult:
    params = SuperpositionParams()
    K = theta_family(np.pi / 4)
    shifted = closed_form_spinor_moments(SuperCoherentSpec(K, DeformationKind.SHIFTED_NUMBER, 0.0), params)
    number = closed_form_spinor_moments(SuperCoherentSpec(K, DeformationKind.NUMBER, 0.0), params)
    deviations = [abs(shifted.product_squared - 0.25), abs(number.product_squared - 2.25)]
    return _worst("spinor product^2 at zero eigenvalue (1/4 and 9/4)", deviations, 1e-8)


def _max_modulus(kind: DeformationKind) -> float:
    """Eigenvalue bound keeping |phi_-| small enough for the default truncation."""
    return 1.0 if kind is DeformationKind.LINEAR else 2.0


def _spinor_grid(rng: np.random.Generator, modulus: float) -> List[Tuple[float, complex]]:
    grid = []
    for theta in (np.pi / 4, 3 * np.pi / 4):
        for _ in range(10):
            grid.append((theta, complex(rng.uniform(0, modulus) * np.exp(1j * rng.uniform(0, 2 * np.pi)))))
    return grid


def check_spinor_oracle(dim: int, rng: np.random.Generator) -> CheckResult:
    params = SuperpositionParams()
    deviations = []
    for kind in KINDS:
        for theta, eigenvalue in _spinor_grid(rng, _max_modulus(kind)):
            spec = SuperCoherentSpec(theta_family(theta), kind, eigenvalue)
            closed = closed_form_spinor_moments(spec, params)
            oracle = oracle_spinor_moments(build_superposition(spec, params, dim))
            deviations.append(max(abs(closed.var_x - oracle.var_x), abs(closed.var_p - oracle.var_p)))
    return _worst("spinor closed-form moments vs truncated matrices", deviations, config.ORACLE_AGREEMENT)


def check_phase_limits(dim: int, rng: np.random.Generator) -> CheckResult:
    params = SuperpositionParams()
    K = theta_family(np.pi / 4)
    shifted = closed_form_phase(SuperCoherentSpec(K, DeformationKind.SHIFTED_NUMBER, 0.0), params).beta
    number = closed_form_phase(SuperCoherentSpec(K, DeformationKind.NUMBER, 0.0), params).beta
    return _worst("geometric phases at zero eigenvalue (0 and 2 pi)", [abs(shifted), abs(number - 2 * np.pi)], 1e-8)


def check_phase_oracle(dim: int, rng: np.random.Generator) -> CheckResult:
    params = SuperpositionParams()
    deviations = []
    for kind in KINDS:
        for theta in np.linspace(0.3, 2.8, 5):
            if abs(theta - np.pi / 2) < 0.1:
                continue
            for modulus in np.linspace(0.0, 0.6 * _max_modulus(kind), 5):
                spec = SuperCoherentSpec(theta_family(theta), kind, modulus * np.exp(0.4j))
                closed = closed_form_phase(spec, params).beta
                oracle = geometric_phase_oracle(build_superposition(spec, params, dim)).beta
                deviations.append(abs(closed - oracle))
    return _worst("geometric phase closed form vs oracle", deviations, config.ORACLE_AGREEMENT)


def check_evolution_loop(dim: int, rng: np.random.Generator) -> CheckResult:
    values = [evolution_loop_check(omega, min(dim, 128)) for omega in (1.0, 2.0, 0.5)]
    return _worst("evolution loop U(2 pi/omega) = I", values, 1e-12)


def check_heisenberg(dim: int, rng: np.random.Generator) -> CheckResult:
    params = SuperpositionParams()
    shortfalls = []
    for kind in KINDS:
        for theta in (np.pi / 4, 3 * np.pi / 4):
            for re in np.linspace(0.0, 2.0, 9):
                report = closed_form_spinor_moments(SuperCoherentSpec(theta_family(theta), kind, re), params)
                shortfalls.append(0.5 - report.product)
        for re in np.linspace(-2.0, 2.0, 9):
            shortfalls.append(0.5 - closed_form_moments(CoherentLabel(complex(re, 0.5 * re), kind)).product)
    return _worst("Heisenberg bound product >= 1/2", shortfalls, 1e-10)


def check_boundary_continuity(dim: int, rng: np.random.Generator) -> CheckResult:
    """Superposition states on both sides of theta = pi/2 against the degenerate state."""
    distances = []
    for kind in DEFORMED:
        states = []
        for theta in (np.pi / 2 - 1e-6, np.pi / 2 + 1e-6):
            spec = SuperCoherentSpec(theta_family(theta), kind, 1.0)
            states.append(superpose(build_generic(spec, dim), SuperpositionParams()).normalized())
        distances.append(state_distance(*states))
    return _worst("continuity across theta = pi/2", distances, 1e-2)


CHECKS: Tuple[Callable[[int, np.random.Generator], CheckResult], ...] = (
    check_hypergeom,
    check_scalar_limits,
    check_linear_baseline,
    check_scalar_oracle,
    check_eigen_residuals,
    check_degenerate_residuals,
    check_commutators,
    check_recurrence,
    check_spinor_limits,
    check_spinor_oracle,
    check_phase_limits,
    check_phase_oracle,
    check_evolution_loop,
    check_heisenberg,
    check_boundary_continuity,
)


def run_validation(dim: int = config.DEFAULT_DIM, seed: int = config.DEFAULT_SEED) -> List[CheckResult]:
    """Runs every check in a fixed order with one seeded generator."""
    rng = np.random.default_rng(seed)
    results = []
    for check in CHECKS:
        name = check.__name__.replace("check_", "").replace("_", " ")
        try:
            result = check(dim, rng)
        except (SupercoherentError, ArithmeticError) as e:
            result = CheckResult(name=name, passed=False, value=float("nan"), threshold=float("nan"),
                                 message=f"{type(e).__name__}: {e}")
        logging.info(f"[{'PASS' if result.passed else 'FAIL'}] {result.name} {result.message}".rstrip())
        results.append(result)
    return results


def format_report(results: List[CheckResult], dim: int, seed: int) -> List[str]:
    """Plain-text report lines; identical inputs give byte-identical output."""
    lines = [
        "Supercoherent-state toolkit - Validation Report",
        "=" * 50,
        f"dim = {dim}, seed = {seed}",
        "",
    ]
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        lines.append(f"[{status}] {result.name}: {result.value:.3e} (threshold {result.threshold:.1e})")
        if result.message:
            lines.append(f"       {result.message}")
    passed = sum(r.passed for r in results)
    lines += ["", f"{passed}/{len(results)} checks passed", "=" * 50, "END OF REPORT"]
    return lines
