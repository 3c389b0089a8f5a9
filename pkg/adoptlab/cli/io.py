# adoptlab/cli/io.py

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union
import pandas as pd
from .config import RunConfig
from ..exceptions import ConfigurationError
import logging

# Initialize logger for this module
logger = logging.getLogger('adoptlab.cli.io')

MANIFEST_NAME = "manifest.json"
LOG_NAME = "adoptlab.log"


def prepare_output_dir(path: Union[str, Path]) -> Path:
    """
    Create the output directory if needed.

    Raises:
        ConfigurationError: If the directory cannot be created.
    """
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        error_msg = f"Output directory '{out}' is not writable: {e}"
        logger.error(error_msg)
        raise ConfigurationError(error_msg) from e
    return out


def write_table(table: pd.DataFrame, path: Union[str, Path]) -> Path:
    """
    Write one CSV table.

    Floats are written in their shortest round-trip form and without an
    index column, so the header is exactly the frame's columns.
    """
    path = Path(path)
    table.to_csv(path, index=False, lineterminator="\n")
    logger.debug(f"Wrote {len(table)} rows to {path}")
    return path


def write_tables(out_dir: Union[str, Path], tables: Dict[str, pd.DataFrame]) -> List[str]:
    """Write every table as ``<name>.csv``; returns the file names in write order."""
    names = []
    for name, table in tables.items():
        write_table(table, Path(out_dir) / f"{name}.csv")
        names.append(f"{name}.csv")
    return names


def manifest_record(
    config: RunConfig,
    version: str,
    wall_clock: float,
    outputs: List[str],
    error: Optional[Dict[str, str]] = None,
) -> Dict[str, Any]:
    """
    The run manifest: the fully resolved config plus a ``run`` block.

    The manifest is itself a valid config, so feeding it back reproduces the run.
    """
    record = config.model_dump(mode="json", by_alias=True, exclude={"run"})
    record["run"] = {
        "version": version,
        "wallClockSeconds": wall_clock,
        "status": "failed" if error else "ok",
        "outputs": outputs,
        "error": error,
    }
    return record


def write_manifest(out_dir: Union[str, Path], record: Dict[str, Any]) -> Path:
    path = Path(out_dir) / MANIFEST_NAME
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(record, handle, indent=2)
        handle.write("\n")
    logger.info(f"Manifest written to {path}")
    return path


def read_manifest(path: Union[str, Path]) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)
