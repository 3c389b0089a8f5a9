# adoptlab/cli/__init__.py

"""
Command-line surface: run configuration, table output and the subcommands.
"""

from .config import COMMANDS, RunConfig, ScenarioSpec, SweepSpec, load_config, parse_config
from .io import MANIFEST_NAME, manifest_record, read_manifest, write_manifest, write_table, write_tables

__all__ = [
    "COMMANDS",
    "RunConfig",
    "ScenarioSpec",
    "SweepSpec",
    "load_config",
    "parse_config",
    "MANIFEST_NAME",
    "manifest_record",
    "read_manifest",
    "write_manifest",
    "write_table",
    "write_tables",
]
