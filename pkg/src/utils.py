# src/utils.py

"""
Utility functions for logging and file handling.

Scan tables are written through pandas so that CSV and JSON share one
in-memory representation; every float keeps 17 significant digits.
"""

import json
import logging
import os
from typing import Any, Dict, List, Mapping, Sequence

import pandas as pd

from src import config
from src.errors import DomainError


def setup_logging(level: int = logging.INFO, log_path: str = config.LOG_PATH) -> None:
    """Configures the root logger for the project."""
    # Ensure the handler is clean for multiple runs
    for handler in logging.root.handlers[:]:
        logging.root.removeHandler(handler)

    os.makedirs(os.path.dirname(log_path) or ".", exist_ok=True)
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] [%(module)s:%(lineno)d] %(message)s",
        handlers=[
            logging.StreamHandler(),
            logging.FileHandler(log_path, mode='w')  # Overwrite log file on each run
        ]
    )


def _ensure_parent(path: str) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)


def rows_to_frame(rows: Sequence[Mapping[str, Any]], columns: Sequence[str]) -> pd.DataFrame:
    """Row dicts to a frame; the `error` column is only kept when some row failed."""
    frame = pd.DataFrame(list(rows), columns=list(columns) + ["error"])
    if frame["error"].isna().all():
        frame = frame.drop(columns="error")
    return frame


def write_table(frame: pd.DataFrame, path: str, fmt: str = "csv") -> None:
    """
    Writes a scan table as CSV or JSON.

    CSV: header row, comma separated, '\\n' line endings, floats as %.17g.
    JSON: an array of row objects with the same field names; missing values
    become null.
    """
    _ensure_parent(path)
    if fmt == "csv":
        frame.to_csv(path, index=False, float_format=config.FLOAT_FORMAT, lineterminator="\n", encoding="utf-8")
    elif fmt == "json":
        records = frame.astype(object).where(frame.notna(), None).to_dict(orient="records")
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            # repr of a float is the shortest string that round-trips
            json.dump(records, f, indent=2, allow_nan=False)
            f.write("\n")
    else:
        raise DomainError(f"unknown output format {fmt!r}; choose csv or json")
    logging.info(f"Wrote {len(frame)} rows to {path}")


def metadata_path(output_path: str) -> str:
    return f"{output_path}.meta.json"


def write_metadata(output_path: str, metadata: Dict[str, Any]) -> str:
    """Writes the `<output>.meta.json` sidecar with sorted keys and returns its path."""
    path = metadata_path(output_path)
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(metadata, f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def save_report(lines: List[str], path: str) -> None:
    """Saves a list of report lines to a text file."""
    _ensure_parent(path)
    with open(path, 'w', encoding="utf-8", newline="\n") as f:
        for line in lines:
            f.write(f"{line}\n")
    logging.info(f"Report saved to {path}")
