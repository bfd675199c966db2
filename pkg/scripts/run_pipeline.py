# scripts/run_pipeline.py

"""
Main Automated Pipeline Script for the supercoherent-state toolkit.

This script regenerates every figure data file and then runs the validation
suite, calling the specialized modules from the `src` package.

Workflow:
1.  Setup & Configuration
2.  Figure scans (one data file plus metadata sidecar per preset)
3.  Validation suite and text report

This script is designed to be executed by the main CLI (`main.py figures`) or
by an automated system like a CI/CD pipeline.
"""

import logging
import os
import sys
from typing import Optional, Sequence

# Ensure the 'src' directory is in the Python path to allow for modular imports
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src import config, scans, utils  # noqa: E402
from scripts import generate_report  # noqa: E402


def main(dim: Optional[int] = None, jobs: int = 1, presets: Optional[Sequence[str]] = None) -> int:
    """
    Executes every preset scan and the validation suite.

    Returns:
        int: 0 on success, 1 when a scan disagrees with its oracle or a
        validation check fails, 3 when an output file cannot be written.
    """

    # 1. Setup
    utils.setup_logging()
    dim = config.resolve_dim(dim)
    names = list(presets) if presets else sorted(config.FIGURE_PRESETS)
    status = 0

    try:
        # -----------------------------------------------------------------
        # PHASE 1: FIGURE SCANS
        # -----------------------------------------------------------------
        logging.info(f"--- PIPELINE START: {len(names)} presets at dim={dim} ---")

        for name in names:
            # standard coherent states at the preset windows outgrow the default truncation
            oracle_check = config.FIGURE_PRESETS[name]["kind"] != "linear"
            cfg = scans.from_preset(name, dim=dim, jobs=jobs, oracle_check=oracle_check)
            result = scans.run_scan(cfg)
            scans.write_scan(cfg, result)
            if result.n_mismatches:
                logging.error(f"{name}: {result.n_mismatches} rows disagree with the oracle")
                status = 1

        # -----------------------------------------------------------------
        # PHASE 2: VALIDATION
        # -----------------------------------------------------------------
        logging.info("--- PIPELINE: Running the validation suite ---")

        results = generate_report.run_and_save(dim, config.DEFAULT_SEED, config.VALIDATION_REPORT_PATH)
        if not all(result.passed for result in results):
            status = 1

        logging.info(f"--- PIPELINE FINISHED (status {status}) ---")

    except OSError as e:
        logging.error(f"PIPELINE FAILED: cannot write output: {e}", exc_info=True)
        return 3
    except Exception as e:
        logging.error(f"PIPELINE FAILED: An unexpected error occurred: {e}", exc_info=True)
        return 1

    return status


if __name__ == "__main__":
    # Exit with a non-zero status code to indicate failure, useful for CI/CD
    sys.exit(main())
