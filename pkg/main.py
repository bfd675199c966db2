# main.py

"""
Main Command-Line Interface (CLI) for the supercoherent-state toolkit.

Subcommands evaluate single points and parameter grids (uncertainty products,
geometric phases), dump state coefficients, run the validation suite and
regenerate every figure preset.

Built with Typer for a modern, self-documenting CLI experience.

Exit codes: 0 success, 1 validation or oracle failure, 2 bad arguments,
3 I/O error.
"""

from math import pi
from typing import List, Optional, Tuple

import typer
from rich.console import Console
from rich.table import Table
from typing_extensions import Annotated

from src import config, scans, utils
from src.errors import DomainError, SupercoherentError
from src.fock import DeformationKind
from src.supercoherent import SuperCoherentSpec, SuperpositionParams
from src.susy import theta_family

EXIT_FAILURE = 1
EXIT_IO_ERROR = 3

# Create a Typer application
app = typer.Typer(
    name="susy-ncs",
    help="Nonlinear supercoherent states: uncertainty products, geometric phases and oracle validation.",
    add_completion=False,
    no_args_is_help=True,
)
console = Console()

# ---- Shared options ----
KindOption = Annotated[Optional[DeformationKind], typer.Option("--kind", help="Deformation: linear, nl (f=N+1) or NL (f=N).")]
ThetaOption = Annotated[Optional[List[float]], typer.Option("--theta", help="Theta of K = [[1, cos], [sin, 1]]; repeatable.")]
ThetaMinOption = Annotated[Optional[float], typer.Option("--theta-min")]
ThetaMaxOption = Annotated[Optional[float], typer.Option("--theta-max")]
ThetaStepOption = Annotated[Optional[float], typer.Option("--theta-step")]
EtaOption = Annotated[float, typer.Option("--eta", help="Superposition angle eta.")]
LambdaOption = Annotated[float, typer.Option("--lambda", help="Superposition phase lambda.")]
RangeValue = Annotated[Optional[float], typer.Option()]
DimOption = Annotated[Optional[int], typer.Option("--dim", envvar=config.DIM_ENV_VAR, help="Fock truncation per component.")]
TolOption = Annotated[float, typer.Option("--tol", help="K-classification tolerance.")]
OutOption = Annotated[Optional[str], typer.Option("--out", help="Output file path.")]
FormatOption = Annotated[str, typer.Option("--format", help="csv or json.")]
OracleOption = Annotated[bool, typer.Option("--oracle-check", help="Add an oracle column computed on truncated matrices.")]
PresetOption = Annotated[Optional[str], typer.Option("--preset", help="Figure preset: fig1 ... fig7.")]
JobsOption = Annotated[int, typer.Option("--jobs", help="Parallel workers for grid rows (joblib).")]


def _pick_range(
    values: Tuple[Optional[float], Optional[float], Optional[float]], base: Tuple[float, float, float]
) -> Tuple[float, float, float]:
    return tuple(value if value is not None else default for value, default in zip(values, base))


def _build_scan(
    command: str,
    preset: Optional[str],
    kind: Optional[DeformationKind],
    theta: Optional[List[float]],
    theta_range: Tuple[Optional[float], Optional[float], Optional[float]],
    eta: float,
    lam: float,
    re_range: Tuple[Optional[float], Optional[float], Optional[float]],
    im_range: Tuple[Optional[float], Optional[float], Optional[float]],
    dim: Optional[int],
    tol: float,
    out: Optional[str],
    fmt: str,
    oracle_check: bool,
    jobs: int,
) -> scans.ScanConfig:
    """Merges explicit flags over the preset (or the built-in defaults); bad values exit with code 2."""
    try:
        if preset:
            base = scans.from_preset(preset)
            if base.command != command:
                raise DomainError(f"preset {preset} belongs to the {base.command} command")
            base_kind, base_re, base_im, base_theta = base.kind, base.re_range, base.im_range, base.theta_values
        else:
            base_kind = DeformationKind.SHIFTED_NUMBER
            base_re = base_im = config.DEFAULT_EIGENVALUE_RANGE
            base_theta = config.DEFAULT_THETA_VALUES if command == "geomphase" else None

        theta_values = base_theta
        if theta:
            theta_values = tuple(theta)
        elif theta_range[0] is not None:
            lo, hi, step = _pick_range(theta_range, (theta_range[0], theta_range[0], 0.05))
            theta_values = tuple(scans.grid_values(lo, hi, step))

        return scans.ScanConfig(
            command=command,
            kind=kind or base_kind,
            re_range=_pick_range(re_range, base_re),
            im_range=_pick_range(im_range, base_im),
            theta_values=theta_values,
            eta=eta,
            lam=lam,
            dim=config.resolve_dim(dim),
            tolerance=tol,
            output_path=out or f"{config.RESULTS_DIR}/{preset or command}.{fmt}",
            fmt=fmt,
            oracle_check=oracle_check,
            preset=preset,
            jobs=jobs,
        )
    except DomainError as e:
        raise typer.BadParameter(str(e))


def _run_and_write(cfg: scans.ScanConfig) -> None:
    utils.setup_logging()
    result = scans.run_scan(cfg)
    try:
        scans.write_scan(cfg, result)
    except OSError as e:
        typer.echo(f"❌ Cannot write {cfg.output_path}: {e}", err=True)
        raise typer.Exit(code=EXIT_IO_ERROR)
    typer.echo(f"✅ {len(result.frame)} rows written to {cfg.output_path} ({result.n_errors} error rows)")
    if result.n_mismatches:
        typer.echo(f"❌ {result.n_mismatches} rows disagree with the oracle", err=True)
        raise typer.Exit(code=EXIT_FAILURE)


@app.command()
def uncertainty(
    kind: KindOption = None,
    theta: ThetaOption = None,
    theta_min: ThetaMinOption = None,
    theta_max: ThetaMaxOption = None,
    theta_step: ThetaStepOption = None,
    eta: EtaOption = config.DEFAULT_ETA,
    lam: LambdaOption = config.DEFAULT_LAMBDA,
    re_min: RangeValue = None,
    re_max: RangeValue = None,
    re_step: RangeValue = None,
    im_min: RangeValue = None,
    im_max: RangeValue = None,
    im_step: RangeValue = None,
    dim: DimOption = None,
    tol: TolOption = config.CLASSIFY_TOLERANCE,
    out: OutOption = None,
    fmt: FormatOption = "csv",
    oracle_check: OracleOption = False,
    preset: PresetOption = None,
    jobs: JobsOption = 1,
):
    """
    Uncertainty product over an eigenvalue grid.

    Without theta the scalar coherent family is scanned (column `product`);
    with theta the supercoherent superposition is scanned (column
    `product_squared`).
    """
    cfg = _build_scan(
        "uncertainty", preset, kind, theta, (theta_min, theta_max, theta_step), eta, lam,
        (re_min, re_max, re_step), (im_min, im_max, im_step), dim, tol, out, fmt, oracle_check, jobs,
    )
    _run_and_write(cfg)


@app.command()
def geomphase(
    kind: KindOption = None,
    theta: ThetaOption = None,
    theta_min: ThetaMinOption = None,
    theta_max: ThetaMaxOption = None,
    theta_step: ThetaStepOption = None,
    eta: EtaOption = config.DEFAULT_ETA,
    lam: LambdaOption = config.DEFAULT_LAMBDA,
    re_min: RangeValue = None,
    re_max: RangeValue = None,
    re_step: RangeValue = None,
    im_min: RangeValue = None,
    im_max: RangeValue = None,
    im_step: RangeValue = None,
    dim: DimOption = None,
    tol: TolOption = config.CLASSIFY_TOLERANCE,
    out: OutOption = None,
    fmt: FormatOption = "csv",
    oracle_check: OracleOption = False,
    preset: PresetOption = None,
    jobs: JobsOption = 1,
):
    """Geometric phase beta of the superposition over an eigenvalue grid (theta defaults to pi/4 and 3pi/4)."""
    cfg = _build_scan(
        "geomphase", preset, kind, theta, (theta_min, theta_max, theta_step), eta, lam,
        (re_min, re_max, re_step), (im_min, im_max, im_step), dim, tol, out, fmt, oracle_check, jobs,
    )
    _run_and_write(cfg)


@app.command()
def state(
    kind: KindOption = None,
    theta: Annotated[float, typer.Option("--theta")] = pi / 4,
    re: Annotated[float, typer.Option("--re")] = 1.0,
    im: Annotated[float, typer.Option("--im")] = 0.0,
    eta: EtaOption = config.DEFAULT_ETA,
    lam: LambdaOption = config.DEFAULT_LAMBDA,
    dim: DimOption = None,
    tol: TolOption = config.CLASSIFY_TOLERANCE,
    out: OutOption = None,
    fmt: FormatOption = "csv",
):
    """
    Dumps the normalized spinor coefficients of one supercoherent state.

    Printed to stdout as CSV unless --out is given.
    """
    try:
        spec = SuperCoherentSpec(theta_family(theta, tol), kind or DeformationKind.SHIFTED_NUMBER, complex(re, im))
        built = scans.scan_state(spec, SuperpositionParams(eta=eta, lam=lam), config.resolve_dim(dim))
    except SupercoherentError as e:
        raise typer.BadParameter(str(e))

    table = scans.state_table(built)
    if out is None:
        typer.echo(table.to_csv(index=False, float_format=config.FLOAT_FORMAT, lineterminator="\n"), nl=False)
        return
    try:
        utils.write_table(table, out, fmt)
    except DomainError as e:
        raise typer.BadParameter(str(e))
    except OSError as e:
        typer.echo(f"❌ Cannot write {out}: {e}", err=True)
        raise typer.Exit(code=EXIT_IO_ERROR)
    typer.echo(f"✅ {spec.K.family.value} state ({built.dim} levels per component) written to {out}")


@app.command()
def validate(
    dim: DimOption = None,
    seed: Annotated[int, typer.Option("--seed")] = config.DEFAULT_SEED,
    report: Annotated[str, typer.Option("--report", help="Text report path.")] = config.VALIDATION_REPORT_PATH,
):
    """Runs the invariant suite; exits with 1 if any check fails."""
    from scripts import generate_report

    utils.setup_logging()
    dim = config.resolve_dim(dim)
    results = generate_report.run_and_save(dim, seed, report)

    table = Table(title=f"Validation (dim={dim}, seed={seed})")
    table.add_column("check")
    table.add_column("status")
    table.add_column("value", justify="right")
    table.add_column("threshold", justify="right")
    for result in results:
        status = "[green]PASS[/green]" if result.passed else "[red]FAIL[/red]"
        table.add_row(result.name, status, f"{result.value:.3e}", f"{result.threshold:.1e}")
    console.print(table)
    for result in results:
        if result.message:
            console.print(f"[red]{result.name}[/red]: {result.message}")

    if not all(result.passed for result in results):
        raise typer.Exit(code=EXIT_FAILURE)


@app.command()
def figures(
    dim: DimOption = None,
    jobs: JobsOption = 1,
    preset: Annotated[Optional[List[str]], typer.Option("--preset", help="Restrict to these presets; repeatable.")] = None,
):
    """
    Reproduces every figure preset into the results directory and runs the
    validation suite.
    """
    typer.echo("🚀 Starting the figure pipeline...")

    # We dynamically import the script so that it can also be run independently.
    from scripts import run_pipeline as pipeline_script

    status = pipeline_script.main(dim=config.resolve_dim(dim), jobs=jobs, presets=preset or None)
    if status != 0:
        typer.echo("❌ Pipeline finished with failures; see the log for details.", err=True)
        raise typer.Exit(code=status)
    typer.echo("✅ Pipeline completed successfully!")


if __name__ == "__main__":
    app()
