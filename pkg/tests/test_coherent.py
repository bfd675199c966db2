# tests/test_coherent.py

import logging
import math
import sys
import os

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

# Ensure the app's source code is accessible to the test runner
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.coherent import (
    CoherentLabel,
    UncertaintyReport,
    analytic_norm_squared,
    auxiliary_moments,
    build_general_nlcs,
    build_state,
    clamp_variance,
    closed_form_moments,
    coherent_series,
    coherent_series_derivative,
    cross_matrix_elements,
    oracle_moments,
)
from src.errors import DomainError, TruncationError
from src.fock import DeformationKind, FockVector, state_distance

KINDS = list(DeformationKind)


def test_zero_amplitude_limits():
    """At alpha = 0 the f = N + 1 state is the vacuum (product 1/2) and the f = N state is |1> (product 3/2)."""
    shifted = closed_form_moments(CoherentLabel(0.0, DeformationKind.SHIFTED_NUMBER))
    number = closed_form_moments(CoherentLabel(0.0, DeformationKind.NUMBER))
    assert shifted.product == pytest.approx(0.5, abs=1e-12), "vacuum product should be 1/2"
    assert number.product == pytest.approx(1.5, abs=1e-12), "|1> product should be 3/2"
    assert shifted.mean_x == 0 and number.mean_p == 0, "means vanish at alpha = 0"


@pytest.mark.parametrize("alpha", [0.3, 1.7 - 2.2j, -2.9j, 3.0 + 3.0j])
def test_standard_coherent_states_are_minimal(alpha):
    """The f = 1 family keeps both variances at 1/2 for every amplitude."""
    report = closed_form_moments(CoherentLabel(alpha, DeformationKind.LINEAR))
    assert report.var_x == pytest.approx(0.5) and report.var_p == pytest.approx(0.5)
    assert report.product == pytest.approx(0.5, abs=1e-10), "standard coherent product should be 1/2"
    assert report.mean_x == pytest.approx(math.sqrt(2) * complex(alpha).real)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("alpha", [0.0, 0.9, -1.2 + 0.5j, 1.5j, 1.5 - 1.5j])
def test_closed_forms_match_truncated_matrices(kind, alpha):
    """Every closed-form moment agrees with <psi|O|psi> on the truncated state to 1e-8."""
    label = CoherentLabel(alpha, kind)
    closed = closed_form_moments(label)
    oracle = oracle_moments(build_state(label, 64))
    for field in ("mean_x", "mean_p", "mean_x2", "mean_p2", "var_x", "var_p", "product"):
        assert getattr(closed, field) == pytest.approx(getattr(oracle, field), abs=1e-8), (
            f"{kind.name} {field} at alpha={alpha}"
        )


def test_series_coefficients_and_normalizer():
    """Bare coefficients follow alpha^n/(n! sqrt(n!)) for f = N + 1, and their norm^2 is 0F2(1,1;r^2)."""
    alpha = 0.8 + 0.6j
    series = coherent_series(DeformationKind.SHIFTED_NUMBER, alpha, 40)
    for n in (0, 1, 4, 7):
        expected = alpha**n / (math.factorial(n) * math.sqrt(math.factorial(n)))
        assert series.coefficients[n] == pytest.approx(expected), f"coefficient {n}"
    assert series.norm_squared == pytest.approx(analytic_norm_squared(DeformationKind.SHIFTED_NUMBER, 1.0), rel=1e-12)

    number = coherent_series(DeformationKind.NUMBER, alpha, 40)
    assert number.coefficients[0] == 0 and number.coefficients[1] == 1, "f = N states start at |1>"
    expected = alpha**3 / (math.factorial(3) * math.sqrt(math.factorial(4)))
    assert number.coefficients[4] == pytest.approx(expected), "c_{n+1} = alpha^n/(n! sqrt((n+1)!))"


def test_truncation_error_when_dim_too_small():
    """A large amplitude at a small truncation loses norm and must raise."""
    with pytest.raises(TruncationError):
        build_state(CoherentLabel(4.0, DeformationKind.LINEAR), 8)
    with pytest.raises(TruncationError):
        coherent_series_derivative(DeformationKind.LINEAR, 4.0, 8)


def test_derivative_matches_finite_difference():
    """The term-wise derivative agrees with a central difference of the bare series."""
    alpha, h = 0.7 + 0.2j, 1e-6
    for kind in KINDS:
        derivative = coherent_series_derivative(kind, alpha, 40).coefficients
        forward = coherent_series(kind, alpha + h, 40).coefficients
        backward = coherent_series(kind, alpha - h, 40).coefficients
        assert np.allclose(derivative, (forward - backward) / (2 * h), atol=1e-8), f"{kind.name} derivative"

    at_origin = coherent_series_derivative(DeformationKind.NUMBER, 0.0, 10).coefficients
    assert at_origin[2] == pytest.approx(1 / math.sqrt(2)) and np.count_nonzero(at_origin) == 1


def test_general_builder_reproduces_named_families():
    """f(n) = n + 1 and f(n) = n through the general builder give the named states."""
    alpha = 1.1 - 0.4j
    shifted = build_general_nlcs(lambda n: n + 1, alpha, 48)
    number = build_general_nlcs(lambda n: n, alpha, 48)
    assert state_distance(shifted, build_state(CoherentLabel(alpha, DeformationKind.SHIFTED_NUMBER), 48)) < 1e-7
    assert state_distance(number, build_state(CoherentLabel(alpha, DeformationKind.NUMBER), 48)) < 1e-7
    assert shifted.is_normalized(), "general builder returns a normalized state"


def test_general_builder_rejects_unsupported_zeros():
    """Zeros of f other than a single one at n = 0 are outside the supported patterns."""
    with pytest.raises(DomainError):
        build_general_nlcs(lambda n: n - 3, 0.5, 16)


def test_cross_elements_reduce_to_moments_on_the_diagonal():
    """<alpha|O|alpha> from the two-state formulas equals the single-state closed forms."""
    for kind in KINDS:
        alpha = 0.9 - 0.7j
        elements = cross_matrix_elements(kind, alpha, alpha)
        report = closed_form_moments(CoherentLabel(alpha, kind))
        assert elements.overlap == pytest.approx(1.0), f"{kind.name} states are normalized"
        assert elements.x.real == pytest.approx(report.mean_x)
        assert elements.p.real == pytest.approx(report.mean_p)
        assert elements.x2.real == pytest.approx(report.mean_x2)
        assert elements.p2.real == pytest.approx(report.mean_p2)


@pytest.mark.parametrize("kind", KINDS)
def test_cross_elements_against_truncated_states(kind):
    """Off-diagonal elements agree with vdot products of the truncated states."""
    from src.fock import ladder_matrices, quadrature_matrices

    a1, a2 = 0.6 + 0.3j, -0.4 + 0.9j
    first = build_state(CoherentLabel(a1, kind), 64).coefficients
    second = build_state(CoherentLabel(a2, kind), 64).coefficients
    position, momentum = quadrature_matrices(64)
    _, _, number = ladder_matrices(64)
    elements = cross_matrix_elements(kind, a1, a2)
    expected = {
        "overlap": np.vdot(first, second),
        "x": np.vdot(first, position @ second),
        "x2": np.vdot(first, position @ position @ second),
        "p": np.vdot(first, momentum @ second),
        "p2": np.vdot(first, momentum @ momentum @ second),
        "number": np.vdot(first, number @ second),
    }
    for name, value in expected.items():
        assert abs(getattr(elements, name) - value) < 1e-9, f"{kind.name} <a1|{name}|a2>"


def test_auxiliary_functions_at_origin():
    """beta, sigma, tau and rho at r = 0 follow from 0F2(b;0) = 1."""
    aux = auxiliary_moments(0.0)
    assert aux.beta == pytest.approx(1.5) and aux.sigma == pytest.approx(0.5)
    assert aux.tau == pytest.approx(0.5), "tau(0) = 2 - beta(0)"


def test_clamp_variance_logs_beyond_rounding(caplog):
    """Rounding-size negatives are silently clamped, larger ones produce a warning."""
    assert clamp_variance(-1e-14) == 0.0
    with caplog.at_level(logging.WARNING):
        assert clamp_variance(-1e-3, "var_x") == 0.0
    assert "var_x" in caplog.text, "a warning naming the variance should be logged"


def test_report_from_moments():
    """Variances default to <q^2> - <q>^2 and the product is their geometric mean."""
    report = UncertaintyReport.from_moments(1.0, 0.0, 1.5, 0.5)
    assert report.var_x == pytest.approx(0.5) and report.product == pytest.approx(0.5)
    assert report.product_squared == pytest.approx(0.25)


def test_label_rejects_non_finite_amplitude():
    with pytest.raises(DomainError):
        CoherentLabel(complex("nan"), DeformationKind.LINEAR)


@given(
    st.floats(min_value=-2.5, max_value=2.5, allow_nan=False),
    st.floats(min_value=-2.5, max_value=2.5, allow_nan=False),
    st.sampled_from(KINDS),
)
@settings(max_examples=150, deadline=None)
def test_heisenberg_bound(re, im, kind):
    """Property: every closed-form product respects the Heisenberg bound 1/2."""
    assert closed_form_moments(CoherentLabel(complex(re, im), kind)).product >= 0.5 - 1e-10


def test_fock_vector_padding_keeps_coefficients():
    padded = FockVector(np.array([1.0, 2.0])).padded(5)
    assert padded.dim == 5 and padded.coefficients[1] == 2.0
    with pytest.raises(DomainError):
        padded.padded(3)


@settings(max_examples=40, deadline=None)
@given(
    st.floats(min_value=0.0, max_value=2.5, allow_nan=False),
    st.floats(min_value=0.0, max_value=2 * math.pi, allow_nan=False),
    st.sampled_from(KINDS),
)
def test_doubling_the_truncation_keeps_the_state(modulus, angle, kind):
    """A state built at dim and at 2 dim (zero-padded) overlaps to within 1e-12."""
    label = CoherentLabel(modulus * complex(math.cos(angle), math.sin(angle)), kind)
    small = build_state(label, 48)
    large = build_state(label, 96)
    assert abs(small.padded(96).inner(large)) > 1 - 1e-12, f"{kind.name} at alpha={label.amplitude}"


@settings(max_examples=40, deadline=None)
@given(
    st.floats(min_value=-2.5, max_value=2.5, allow_nan=False),
    st.floats(min_value=-2.5, max_value=2.5, allow_nan=False),
    st.sampled_from(KINDS),
)
def test_quarter_turn_rotates_the_means(re, im, kind):
    """alpha -> i alpha maps (<x>, <p>) to (-<p>, <x>) and leaves the product unchanged."""
    report = closed_form_moments(CoherentLabel(complex(re, im), kind))
    rotated = closed_form_moments(CoherentLabel(1j * complex(re, im), kind))
    assert rotated.mean_x == pytest.approx(-report.mean_p, abs=1e-10)
    assert rotated.mean_p == pytest.approx(report.mean_x, abs=1e-10)
    assert rotated.product == pytest.approx(report.product, abs=1e-10)
