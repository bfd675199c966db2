# src/scans.py

"""
Parameter-grid scans behind the figure data files.

A scan walks a rectangular grid of eigenvalues (real part x imaginary part),
optionally for several theta values of K = [[1, cos theta], [sin theta, 1]],
and evaluates one quantity per point:

- `uncertainty` without theta: the scalar coherent family's product,
- `uncertainty` with theta: the supercoherent superposition's product^2,
- `geomphase`: the geometric phase beta of the superposition.

Rows are independent; they can be evaluated in parallel with joblib and are
always returned in grid order. A point that fails to construct becomes an
error row instead of aborting the scan.
"""

import logging
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from src import config, utils
from src.coherent import CoherentLabel, build_state, closed_form_moments, oracle_moments
from src.errors import DomainError, SupercoherentError
from src.fock import DeformationKind, SpinorState
from src.geomphase import closed_form_phase, geometric_phase_oracle
from src.supercoherent import (
    SuperCoherentSpec,
    SuperpositionParams,
    build_superposition,
    build_supercoherent,
    closed_form_spinor_moments,
    oracle_spinor_moments,
)
from src.susy import KFamily, theta_family

Range = Tuple[float, float, float]
COMMANDS = ("uncertainty", "geomphase")
FORMATS = ("csv", "json")


def grid_values(lo: float, hi: float, step: float) -> np.ndarray:
    """lo, lo + step, ... up to hi inclusive, robust to float drift in the last point."""
    if not step > 0:
        raise DomainError(f"step must be positive, got {step}")
    if hi < lo:
        raise DomainError(f"empty range [{lo}, {hi}]")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return np.round(lo + step * np.arange(count), 12)


@dataclass(frozen=True)
class ScanConfig:
    command: str
    kind: DeformationKind
    re_range: Range
    im_range: Range
    theta_values: Optional[Tuple[float, ...]] = None
    eta: float = config.DEFAULT_ETA
    lam: float = config.DEFAULT_LAMBDA
    dim: int = config.DEFAULT_DIM
    tolerance: float = config.CLASSIFY_TOLERANCE
    output_path: str = f"{config.RESULTS_DIR}/scan.csv"
    fmt: str = "csv"
    oracle_check: bool = False
    preset: Optional[str] = None
    jobs: int = 1
    seed: int = config.DEFAULT_SEED
    omega: float = config.OMEGA

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise DomainError(f"unknown scan command {self.command!r}")
        object.__setattr__(self, "kind", DeformationKind(self.kind))
        if self.fmt not in FORMATS:
            raise DomainError(f"format must be one of {FORMATS}, got {self.fmt!r}")
        if self.dim < config.MIN_SCAN_DIM:
            raise DomainError(f"scans need dim >= {config.MIN_SCAN_DIM}, got {self.dim}")
        if not self.tolerance > 0:
            raise DomainError(f"tolerance must be positive, got {self.tolerance}")
        if self.command == "geomphase" and not self.theta_values:
            raise DomainError("geomphase scans need at least one theta value")
        if self.theta_values is not None:
            if len(self.theta_values) == 0:
                raise DomainError("theta list is empty")
            object.__setattr__(self, "theta_values", tuple(float(t) for t in self.theta_values))
        grid_values(*self.re_range)
        grid_values(*self.im_range)

    @property
    def spinor(self) -> bool:
        return self.theta_values is not None

    @property
    def re_values(self) -> np.ndarray:
        return grid_values(*self.re_range)

    @property
    def im_values(self) -> np.ndarray:
        return grid_values(*self.im_range)

    @property
    def params(self) -> SuperpositionParams:
        return SuperpositionParams(eta=self.eta, lam=self.lam)

    @property
    def value_column(self) -> str:
        if self.command == "geomphase":
            return "beta"
        return "product_squared" if self.spinor else "product"

    @property
    def columns(self) -> List[str]:
        leading = ["theta", "re", "im"] if self.spinor else ["re", "im"]
        value = self.value_column
        return leading + [value] + ([f"oracle_{value}"] if self.oracle_check else [])

    def points(self) -> List[Tuple[Optional[float], float, float]]:
        thetas: Sequence[Optional[float]] = self.theta_values if self.spinor else (None,)
        return [(t, float(re), float(im)) for t in thetas for re in self.re_values for im in self.im_values]


def from_preset(name: str, **overrides: Any) -> ScanConfig:
    """ScanConfig pinned to one of the figure presets; keyword overrides win."""
    if name not in config.FIGURE_PRESETS:
        raise DomainError(f"unknown preset {name!r}; choose from {sorted(config.FIGURE_PRESETS)}")
    preset = config.FIGURE_PRESETS[name]
    theta_values = preset.get("theta_values")
    if "theta_range" in preset:
        theta_values = tuple(grid_values(*preset["theta_range"]))
    settings: Dict[str, Any] = {
        "command": preset["command"],
        "kind": preset["kind"],
        "re_range": preset["re"],
        "im_range": preset["im"],
        "theta_values": theta_values,
        "preset": name,
        "output_path": f"{config.RESULTS_DIR}/{name}.csv",
    }
    settings.update({key: value for key, value in overrides.items() if value is not None})
    return ScanConfig(**settings)


def scan_state(spec: SuperCoherentSpec, params: SuperpositionParams, dim: int) -> SpinorState:
    """
    The normalized state a scan point stands for.

    Generic K gives the superposition of |Y+> and |Y->; otherwise the two
    superposition weights become the free parameters (s0', t1') of the
    family's construction.
    """
    if _closed_form_available(spec):
        return build_superposition(spec, params, dim).normalized()
    weight_plus, weight_minus = params.weights
    return build_supercoherent(spec, weight_plus, weight_minus, dim).normalized()


def _closed_form_available(spec: SuperCoherentSpec) -> bool:
    return spec.K.family is KFamily.GENERIC and not spec.K.is_near_degenerate()


def _spinor_value(cfg: ScanConfig, spec: SuperCoherentSpec, oracle: bool) -> float:
    if cfg.command == "geomphase":
        if oracle or not _closed_form_available(spec):
            return geometric_phase_oracle(scan_state(spec, cfg.params, cfg.dim), cfg.omega).beta
        return closed_form_phase(spec, cfg.params, cfg.omega).beta
    if oracle or not _closed_form_available(spec):
        return oracle_spinor_moments(scan_state(spec, cfg.params, cfg.dim)).product_squared
    return closed_form_spinor_moments(spec, cfg.params).product_squared


def evaluate_point(cfg: ScanConfig, theta: Optional[float], re: float, im: float) -> Dict[str, Any]:
    """One output row; construction errors are caught and reported in `error`."""
    row: Dict[str, Any] = {"theta": theta, "re": re, "im": im} if cfg.spinor else {"re": re, "im": im}
    eigenvalue = complex(re, im)
    try:
        if cfg.spinor:
            spec = SuperCoherentSpec(theta_family(theta, cfg.tolerance), cfg.kind, eigenvalue)
            row[cfg.value_column] = _spinor_value(cfg, spec, oracle=False)
        else:
            label = CoherentLabel(eigenvalue, cfg.kind)
            row[cfg.value_column] = closed_form_moments(label).product
    except (SupercoherentError, ArithmeticError) as e:
        row["error"] = f"{type(e).__name__}: {e}"
        return row

    if cfg.oracle_check:
        try:
            if cfg.spinor:
                row[f"oracle_{cfg.value_column}"] = _spinor_value(cfg, spec, oracle=True)
            else:
                row[f"oracle_{cfg.value_column}"] = oracle_moments(build_state(label, cfg.dim)).product
        except (SupercoherentError, ArithmeticError) as e:
            row["error"] = f"oracle {type(e).__name__}: {e}"
    return row


@dataclass
class ScanResult:
    frame: pd.DataFrame
    n_errors: int
    n_mismatches: int


def run_scan(cfg: ScanConfig) -> ScanResult:
    """Evaluates every grid point (in parallel when cfg.jobs != 1), in grid order."""
    points = cfg.points()
    logging.info(
        f"Scanning {cfg.command} ({cfg.kind.name}, {'spinor' if cfg.spinor else 'scalar'}): "
        f"{len(points)} points, jobs={cfg.jobs}"
    )
    rows = Parallel(n_jobs=cfg.jobs)(delayed(evaluate_point)(cfg, *point) for point in points)
    frame = utils.rows_to_frame(rows, cfg.columns)

    n_errors = int(frame["error"].notna().sum()) if "error" in frame else 0
    n_mismatches = 0
    if cfg.oracle_check:
        value = cfg.value_column
        deviation = (frame[value] - frame[f"oracle_{value}"]).abs()
        mismatched = deviation > config.ORACLE_AGREEMENT
        n_mismatches = int(mismatched.sum())
        if n_mismatches:
            logging.warning(f"{n_mismatches} rows deviate from the oracle by more than {config.ORACLE_AGREEMENT:.0e}")
    if n_errors:
        logging.warning(f"{n_errors} of {len(points)} rows failed to construct")
    return ScanResult(frame=frame, n_errors=n_errors, n_mismatches=n_mismatches)


def build_metadata(cfg: ScanConfig) -> Dict[str, Any]:
    settings = asdict(cfg)
    settings["kind"] = cfg.kind.value
    settings["range_note"] = config.RANGE_NOTE
    note = config.FIGURE_PRESETS.get(cfg.preset or "", {}).get("note")
    if note:
        logging.warning(f"{cfg.preset}: {note}")
        settings["preset_note"] = note
    settings["columns"] = cfg.columns
    return settings


def write_scan(cfg: ScanConfig, result: ScanResult) -> None:
    """Writes the table in the configured format plus its metadata sidecar."""
    utils.write_table(result.frame, cfg.output_path, cfg.fmt)
    utils.write_metadata(cfg.output_path, build_metadata(cfg))


def state_table(state: SpinorState) -> pd.DataFrame:
    """Coefficient dump: one row per Fock level with both spinor components."""
    upper = state.upper.coefficients
    lower = state.lower.coefficients
    return pd.DataFrame(
        {
            "n": np.arange(state.dim),
            "upper_re": upper.real,
            "upper_im": upper.imag,
            "lower_re": lower.real,
            "lower_im": lower.imag,
        }
    )


def with_output(cfg: ScanConfig, output_path: str, fmt: Optional[str] = None) -> ScanConfig:
    return replace(cfg, output_path=output_path, fmt=fmt or cfg.fmt)
