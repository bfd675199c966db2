# scripts/generate_report.py

"""
Script to run the validation suite and save its text report.

The report carries no timestamp: the same (dim, seed) always produces a
byte-identical file.
"""

import os
import sys
from typing import List

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src import config, utils  # noqa: E402
from src.validation import CheckResult, format_report, run_validation  # noqa: E402


def run_and_save(dim: int, seed: int, file_path: str) -> List[CheckResult]:
    """
    Runs every validation check and writes the report.

    Args:
        dim (int): Fock truncation used by the oracle checks.
        seed (int): Seed of the random K and eigenvalue draws.
        file_path (str): The path to save the generated report.

    Returns:
        List[CheckResult]: One result per check, in suite order.
    """
    results = run_validation(dim, seed)
    utils.save_report(format_report(results, dim, seed), file_path)
    return results


if __name__ == "__main__":
    utils.setup_logging()
    dim = config.resolve_dim()
    outcome = run_and_save(dim, config.DEFAULT_SEED, config.VALIDATION_REPORT_PATH)
    print(f"Report saved to: {config.VALIDATION_REPORT_PATH}")
    sys.exit(0 if all(result.passed for result in outcome) else 1)
