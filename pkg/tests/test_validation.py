# tests/test_validation.py

import sys
import os

import numpy as np
import pytest

# Ensure the app's source code is accessible to the test runner
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src import config
from src.susy import KFamily
from src.validation import CHECKS, format_report, random_generic_k, run_validation
from scripts.generate_report import run_and_save


@pytest.fixture(scope="module")
def default_results():
    return run_validation(config.DEFAULT_DIM, config.DEFAULT_SEED)


def test_every_check_passes_at_the_default_truncation(default_results):
    """The full invariant suite passes at dim 64 with the default seed."""
    assert len(default_results) == len(CHECKS)
    failures = [f"{r.name}: {r.message}" for r in default_results if not r.passed]
    assert not failures, "\n".join(failures)


def test_small_truncation_fails_without_raising():
    """Truncation failures become failed checks, never exceptions."""
    results = run_validation(8, config.DEFAULT_SEED)
    assert len(results) == len(CHECKS)
    assert not all(r.passed for r in results), "8 levels cannot hold the oracle states"
    assert any("TruncationError" in r.message for r in results)


def test_report_is_byte_identical_across_runs(tmp_path):
    """Fixed (dim, seed) reproduces the report exactly."""
    paths = [tmp_path / "first.txt", tmp_path / "second.txt"]
    for path in paths:
        run_and_save(8, 7, str(path))
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_report_layout(default_results):
    lines = format_report(default_results, config.DEFAULT_DIM, config.DEFAULT_SEED)
    assert lines[2] == f"dim = {config.DEFAULT_DIM}, seed = {config.DEFAULT_SEED}"
    assert lines[-3] == f"{len(CHECKS)}/{len(CHECKS)} checks passed"
    assert all(line.startswith("[PASS]") for line in lines[4:4 + len(CHECKS)])


def test_random_k_matrices_are_generic():
    """The seeded K draws stay in the generic family with both eigenvalues away from zero."""
    rng = np.random.default_rng(config.DEFAULT_SEED)
    for _ in range(200):
        K = random_generic_k(rng)
        assert K.family is KFamily.GENERIC
        assert min(abs(K.kappa_plus), abs(K.kappa_minus)) > 0.2
