# tests/test_scans.py

import json
import logging
import sys
import os

import numpy as np
import pandas as pd
import pytest

# Ensure the app's source code is accessible to the test runner
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src import config, utils
from src.errors import DomainError
from src.fock import DeformationKind
from src.scans import (
    ScanConfig,
    build_metadata,
    evaluate_point,
    from_preset,
    grid_values,
    run_scan,
    scan_state,
    state_table,
    with_output,
    write_scan,
)
from src.supercoherent import SuperCoherentSpec, SuperpositionParams
from src.susy import theta_family


def small_config(tmp_path, **overrides):
    settings = dict(
        command="uncertainty",
        kind=DeformationKind.SHIFTED_NUMBER,
        re_range=(-1.0, 1.0, 0.5),
        im_range=(0.0, 0.5, 0.5),
        dim=48,
        output_path=str(tmp_path / "scan.csv"),
    )
    settings.update(overrides)
    return ScanConfig(**settings)


def test_grid_values_include_the_upper_end():
    """The last point is kept even when (hi - lo)/step is not exact in binary."""
    assert np.allclose(grid_values(0.0, 1.0, 0.25), [0, 0.25, 0.5, 0.75, 1.0])
    assert len(grid_values(-3.0, 3.0, 0.1)) == 61, "61 points from -3 to 3 in steps of 0.1"
    with pytest.raises(DomainError):
        grid_values(0.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        grid_values(1.0, 0.0, 0.1)


def test_config_validation(tmp_path):
    """Bad formats, truncations and missing theta lists are rejected at construction."""
    with pytest.raises(DomainError):
        small_config(tmp_path, fmt="xml")
    with pytest.raises(DomainError):
        small_config(tmp_path, dim=4)
    with pytest.raises(DomainError):
        small_config(tmp_path, command="geomphase")
    with pytest.raises(DomainError):
        small_config(tmp_path, re_range=(0.0, 1.0, -0.1))


def test_columns_follow_the_scan_kind(tmp_path):
    scalar = small_config(tmp_path)
    spinor = small_config(tmp_path, theta_values=(np.pi / 4,), oracle_check=True)
    phase = small_config(tmp_path, command="geomphase", theta_values=(np.pi / 4,))
    assert scalar.columns == ["re", "im", "product"]
    assert spinor.columns == ["theta", "re", "im", "product_squared", "oracle_product_squared"]
    assert phase.columns == ["theta", "re", "im", "beta"]


def test_origin_rows(tmp_path):
    """Origin values: scalar product 1/2, spinor product^2 9/4 for f = N, beta 2 pi for f = N."""
    scalar = small_config(tmp_path)
    assert evaluate_point(scalar, None, 0.0, 0.0)["product"] == pytest.approx(0.5)

    spinor = small_config(tmp_path, kind=DeformationKind.NUMBER, theta_values=(np.pi / 4,))
    assert evaluate_point(spinor, np.pi / 4, 0.0, 0.0)["product_squared"] == pytest.approx(2.25, abs=1e-8)

    phase = small_config(tmp_path, command="geomphase", kind=DeformationKind.NUMBER, theta_values=(np.pi / 4,))
    assert evaluate_point(phase, np.pi / 4, 0.0, 0.0)["beta"] == pytest.approx(2 * np.pi, abs=1e-8)


def test_failed_points_become_error_rows(tmp_path):
    """A truncation failure in the oracle is reported in the row instead of aborting the scan."""
    cfg = small_config(tmp_path, kind=DeformationKind.LINEAR, dim=8, oracle_check=True, re_range=(3.0, 3.0, 1.0))
    row = evaluate_point(cfg, None, 3.0, 0.0)
    assert row["product"] == pytest.approx(0.5), "the closed form still succeeds"
    assert row["error"].startswith("oracle TruncationError")

    result = run_scan(cfg)
    assert result.n_errors == len(result.frame) == 2
    assert "error" in result.frame.columns


def test_degenerate_theta_falls_back_to_the_oracle(tmp_path):
    """At theta = pi/2 the superposition has no closed form; the value comes from the truncated state."""
    cfg = small_config(tmp_path, theta_values=(np.pi / 2,), re_range=(0.5, 0.5, 1.0), im_range=(0.0, 0.0, 1.0))
    row = evaluate_point(cfg, np.pi / 2, 0.5, 0.0)
    assert "error" not in row
    assert row["product_squared"] >= 0.25 - 1e-10, "Heisenberg bound for the spinor product^2"

    spec = SuperCoherentSpec(theta_family(np.pi / 2), DeformationKind.SHIFTED_NUMBER, 0.5)
    assert scan_state(spec, SuperpositionParams(), 32).is_normalized(1e-10)


def test_oracle_column_agrees(tmp_path):
    """With --oracle-check every row's closed form and oracle agree, so there are no mismatches."""
    cfg = small_config(tmp_path, theta_values=(np.pi / 4, 3 * np.pi / 4), oracle_check=True, dim=64)
    result = run_scan(cfg)
    assert result.n_mismatches == 0 and result.n_errors == 0
    assert list(result.frame.columns) == cfg.columns
    assert len(result.frame) == 2 * 5 * 2, "theta x re x im grid"


def test_parallel_rows_keep_grid_order(tmp_path):
    """joblib workers return the same frame, row for row, as the serial scan."""
    serial = run_scan(small_config(tmp_path)).frame
    parallel = run_scan(small_config(tmp_path, jobs=2)).frame
    pd.testing.assert_frame_equal(serial, parallel)


def test_written_files_are_deterministic(tmp_path):
    """Two runs of the same config produce byte-identical data and metadata files."""
    cfg = small_config(tmp_path, theta_values=(np.pi / 4,))
    contents = []
    for _ in range(2):
        write_scan(cfg, run_scan(cfg))
        with open(cfg.output_path, "rb") as data, open(utils.metadata_path(cfg.output_path), "rb") as meta:
            contents.append((data.read(), meta.read()))
    assert contents[0] == contents[1]

    text = contents[0][0].decode("utf-8")
    assert text.splitlines()[0] == "theta,re,im,product_squared"
    assert "\r" not in text, "line endings are LF"
    metadata = json.loads(contents[0][1])
    assert metadata["kind"] == "nl" and "range_note" in metadata


def test_json_output(tmp_path):
    """JSON output is an array of row objects with the CSV column names."""
    cfg = with_output(small_config(tmp_path), str(tmp_path / "scan.json"), "json")
    write_scan(cfg, run_scan(cfg))
    with open(cfg.output_path, encoding="utf-8") as f:
        rows = json.load(f)
    assert len(rows) == 10 and set(rows[0]) == {"re", "im", "product"}
    assert rows[4]["re"] == 0.0 and rows[4]["im"] == 0.0
    assert rows[4]["product"] == pytest.approx(0.5)


def test_presets(tmp_path):
    """Presets pin kind, command and windows; keyword overrides win."""
    fig4 = from_preset("fig4", dim=32, output_path=str(tmp_path / "fig4.csv"))
    assert fig4.command == "uncertainty" and fig4.kind is DeformationKind.SHIFTED_NUMBER
    assert fig4.spinor and fig4.dim == 32 and fig4.preset == "fig4"
    assert from_preset("fig7").command == "geomphase"
    assert not from_preset("fig1").spinor
    with pytest.raises(DomainError):
        from_preset("fig9")


def test_state_table_layout():
    spec = SuperCoherentSpec(theta_family(np.pi / 4), DeformationKind.NUMBER, 0.5)
    table = state_table(scan_state(spec, SuperpositionParams(), 16))
    assert list(table.columns) == ["n", "upper_re", "upper_im", "lower_re", "lower_im"]
    assert len(table) == 16 and table.loc[0, "upper_re"] == 0.0, "f = N states have no |0> component"


def test_fig3_metadata_records_the_linear_sweep_note(tmp_path, caplog):
    """The Linear preset carries a note on the missing 0.83 maximum, logged when written."""
    cfg = from_preset("fig3", output_path=str(tmp_path / "fig3.csv"))
    with caplog.at_level(logging.WARNING):
        metadata = build_metadata(cfg)
    assert metadata["preset_note"] == config.LINEAR_SWEEP_NOTE
    assert "0.83" in caplog.text
    assert "preset_note" not in build_metadata(from_preset("fig4"))


def test_unknown_table_format_is_a_domain_error(tmp_path):
    frame = pd.DataFrame({"re": [0.0], "im": [0.0], "product": [0.5]})
    with pytest.raises(DomainError):
        utils.write_table(frame, str(tmp_path / "scan.xml"), "xml")
