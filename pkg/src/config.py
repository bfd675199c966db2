# src/config.py

"""
Central Configuration File for the supercoherent-state toolkit.

This file centralizes all numerical tolerances, truncation defaults, output
paths and figure presets, allowing for easy adjustments to the library's
behavior without modifying the core source code.
It acts as the single source of truth for all configurable aspects of the project.
"""

import os
from math import pi
from typing import Any, Dict, Optional, Tuple

# -----------------------------------------------------------------
# Project Directories & Paths
# -----------------------------------------------------------------
# Defines the folder structure for all outputs.
REPORTS_DIR: str = "reports"
RESULTS_DIR: str = f"{REPORTS_DIR}/results"
VALIDATION_REPORT_PATH: str = f"{REPORTS_DIR}/validation_report.txt"
LOG_PATH: str = f"{REPORTS_DIR}/susy_ncs.log"


# -----------------------------------------------------------------
# Fock-space truncation
# -----------------------------------------------------------------
# Default number of Fock levels |0>...|dim-1>. Coefficients of all three
# coherent families decay at least as fast as |alpha|^n/sqrt(n!), so 64 levels
# keep the dropped tail negligible for |eigenvalue| <= 5.
DEFAULT_DIM: int = 64
MIN_DIM: int = 2
MIN_SCAN_DIM: int = 8

# The environment variable that overrides DEFAULT_DIM (a CLI flag still wins).
DIM_ENV_VAR: str = "SUSY_NCS_DIM"

# Largest dropped-tail norm^2 accepted when a coherent state is truncated.
TAIL_TOLERANCE: float = 1e-12

# Relative agreement required between the numeric norm of a series and its
# closed-form 0F2 normalizer.
NORMALIZER_TOLERANCE: float = 1e-10


# -----------------------------------------------------------------
# Special functions
# -----------------------------------------------------------------
HYPERGEOM_TOLERANCE: float = 1e-14
HYPERGEOM_MAX_TERMS: int = 10_000


# -----------------------------------------------------------------
# K-matrix classification and supercoherent construction
# -----------------------------------------------------------------
CLASSIFY_TOLERANCE: float = 1e-10

# |kappa_+ - kappa_-| below this fraction of |kappa_+| + |kappa_-| routes the
# free-parameter construction through the degenerate formulas.
DEGENERATE_SWITCH: float = 1e-6


# -----------------------------------------------------------------
# Oracle acceptance
# -----------------------------------------------------------------
RESIDUAL_TOLERANCE: float = 1e-8
DEGENERATE_RESIDUAL_TOLERANCE: float = 1e-6
COMMUTATOR_TOLERANCE: float = 1e-10
ORACLE_AGREEMENT: float = 1e-7

# Variances below -VARIANCE_WARN_LEVEL are reported before being clamped to 0.
VARIANCE_WARN_LEVEL: float = 1e-10

# Number of Fock levels kept away from the truncation edge in residual checks.
EDGE_MARGIN: int = 2


# -----------------------------------------------------------------
# Physics defaults (hbar = m = 1)
# -----------------------------------------------------------------
OMEGA: float = 1.0
DEFAULT_ETA: float = pi / 4
DEFAULT_LAMBDA: float = pi / 4


# -----------------------------------------------------------------
# Scans and reproducibility
# -----------------------------------------------------------------
DEFAULT_SEED: int = 42

# Floats are written with 17 significant digits so that every double
# round-trips exactly.
FLOAT_FORMAT: str = "%.17g"

# The figures only show surfaces; none of their axis windows are printed.
# The windows below are an approximation: |eigenvalue| in [0, 3] and theta
# kept a small offset away from the degenerate points 0, pi/2 and pi.
RANGE_NOTE: str = (
    "eigenvalue axes approximate the published surfaces: |eigenvalue| in [0, 3]; "
    "theta grids avoid the degenerate points 0, pi/2 and pi"
)

# The standard-coherent superposition agrees with the oracle but has no
# interior maximum along real z: at theta = pi/4 it rises from 1/4 through
# about 0.40 at z = 0.5 and 4.1 at z = 1.5.
LINEAR_SWEEP_NOTE: str = (
    "no product^2 maximum of 0.83 near |z| = 0.5: the closed form, confirmed by the oracle, "
    "increases monotonically along real z (0.25 at z = 0, ~0.40 at z = 0.5, ~4.1 at z = 1.5 for theta = pi/4)"
)

# Eigenvalue window used by the CLI when neither a preset nor explicit ranges are given.
DEFAULT_EIGENVALUE_RANGE: Tuple[float, float, float] = (-3.0, 3.0, 0.1)
DEFAULT_THETA_VALUES: Tuple[float, ...] = (pi / 4, 3 * pi / 4)

FIGURE_PRESETS: Dict[str, Dict[str, Any]] = {
    "fig1": {
        "command": "uncertainty", "kind": "nl", "theta_values": None,
        "re": (-3.0, 3.0, 0.1), "im": (-3.0, 3.0, 0.1),
    },
    "fig2": {
        "command": "uncertainty", "kind": "NL", "theta_values": None,
        "re": (-3.0, 3.0, 0.1), "im": (-3.0, 3.0, 0.1),
    },
    "fig3": {
        "command": "uncertainty", "kind": "linear", "theta_range": (0.05, 3.10, 0.05),
        "re": (0.0, 3.0, 0.05), "im": (0.0, 0.0, 1.0),
        "note": LINEAR_SWEEP_NOTE,
    },
    "fig4": {
        "command": "uncertainty", "kind": "nl", "theta_range": (0.05, 3.10, 0.05),
        "re": (0.0, 3.0, 0.05), "im": (0.0, 0.0, 1.0),
    },
    "fig5": {
        "command": "uncertainty", "kind": "NL", "theta_range": (0.05, 3.10, 0.05),
        "re": (0.0, 3.0, 0.05), "im": (0.0, 0.0, 1.0),
    },
    "fig6": {
        "command": "geomphase", "kind": "nl", "theta_values": (pi / 4, 3 * pi / 4),
        "re": (-3.0, 3.0, 0.1), "im": (-3.0, 3.0, 0.1),
    },
    "fig7": {
        "command": "geomphase", "kind": "NL", "theta_values": (pi / 4, 3 * pi / 4),
        "re": (-3.0, 3.0, 0.1), "im": (-3.0, 3.0, 0.1),
    },
}


def resolve_dim(flag_value: Optional[int] = None) -> int:
    """Returns the truncation dimension: CLI flag, then environment, then default."""
    if flag_value is not None:
        return int(flag_value)
    env_value = os.environ.get(DIM_ENV_VAR)
    if env_value:
        return int(env_value)
    return DEFAULT_DIM
