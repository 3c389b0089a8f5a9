# adoptlab/cli/config.py

import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union
import numpy as np
from pydantic import Field, model_validator
from ..base.config import StrictModel, build_model
from ..model.params import ModelParams, TrustParams
from ..model.state import FullState
from ..dynamics.config import DynamicsFlags, IntegrationConfig
from ..basins.mapper import BasinConfig
from ..policy.scenario import Intervention
from ..exceptions import ConfigurationError
import logging

# Initialize logger for this module
logger = logging.getLogger('adoptlab.cli.config')

COMMANDS = ("simulate", "basins", "equilibria", "sweep-rho", "trust", "policy", "verify-all")
CommandName = Literal["simulate", "basins", "equilibria", "sweep-rho", "trust", "policy", "verify-all"]


class SweepSpec(StrictModel):
    """
    Swept variable and its grid, given either as explicit values or as start/stop/step.
    """
    variable: str
    values: Optional[List[float]] = None
    start: Optional[float] = None
    stop: Optional[float] = None
    step: Optional[float] = Field(None, gt=0)

    @model_validator(mode="after")
    def check_grid(self) -> "SweepSpec":
        ranged = (self.start, self.stop, self.step)
        if self.values is None and any(v is None for v in ranged):
            raise ValueError("sweepSpec needs either 'values' or all of 'start', 'stop', 'step'")
        if self.values is not None and any(v is not None for v in ranged):
            raise ValueError("sweepSpec takes 'values' or 'start'/'stop'/'step', not both")
        if self.values is None and self.stop < self.start:
            raise ValueError(f"sweepSpec stop ({self.stop}) is below start ({self.start})")
        return self

    def grid(self) -> np.ndarray:
        if self.values is not None:
            return np.asarray(self.values, dtype=float)
        count = int(round((self.stop - self.start) / self.step)) + 1
        return np.round(self.start + self.step * np.arange(count), 12)


class ScenarioSpec(StrictModel):
    """Intervention schedule for the policy command."""
    schedule: List[Intervention] = Field(default_factory=list)
    initial: Optional[FullState] = None
    flags: DynamicsFlags = Field(default_factory=lambda: DynamicsFlags(trust=True, coordination=True))


class RunConfig(StrictModel):
    """
    One run of the command-line tool.

    Every section has defaults, so ``{"command": "simulate"}`` is a complete
    config; the manifest written after the run lists every resolved value.
    """
    command: CommandName
    params: ModelParams = Field(default_factory=ModelParams)
    tp: TrustParams = Field(default_factory=TrustParams)
    integration: IntegrationConfig = Field(default_factory=IntegrationConfig)
    flags: DynamicsFlags = Field(default_factory=DynamicsFlags)
    outputDir: str = "adoptlab_out"
    seedState: Optional[FullState] = None
    cost: Optional[float] = Field(None, ge=0, description="Frozen cost for basins and equilibria (defaults to c0).")
    basin: BasinConfig = Field(default_factory=BasinConfig)
    sweepSpec: Optional[SweepSpec] = None
    scenario: Optional[ScenarioSpec] = None
    run: Optional[Dict[str, Any]] = Field(None, description="Manifest metadata; ignored on input.")


def parse_config(text: str, command: Optional[str] = None, output_dir: Optional[Union[str, Path]] = None) -> RunConfig:
    """
    Parse JSON text into a validated RunConfig.

    Args:
        text (str): Config file contents.
        command (Optional[str]): Subcommand from the command line; fills a
            missing 'command' key and must match a present one.
        output_dir (Optional[Union[str, Path]]): Overrides 'outputDir'.

    Returns:
        RunConfig: The validated configuration.

    Raises:
        ConfigurationError: On malformed JSON (with line and column), a
            command mismatch, unknown keys or invalid values.
        AssumptionViolationError: If the model parameters break the cost
            and benefit ordering.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        error_msg = f"Config is not valid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
        logger.error(error_msg)
        raise ConfigurationError(error_msg) from e
    if not isinstance(data, dict):
        error_msg = f"Config must be a JSON object, got {type(data).__name__}."
        logger.error(error_msg)
        raise ConfigurationError(error_msg)

    if command is not None:
        given = data.get("command")
        if given is not None and given != command:
            error_msg = f"Config is for command '{given}' but '{command}' was requested."
            logger.error(error_msg)
            raise ConfigurationError(error_msg)
        data["command"] = command
    if output_dir is not None:
        data["outputDir"] = str(output_dir)
    config = build_model(RunConfig, data, label="run config")
    logger.debug(f"Parsed run config for command '{config.command}'.")
    return config


def load_config(path: Union[str, Path], command: Optional[str] = None,
                output_dir: Optional[Union[str, Path]] = None) -> RunConfig:
    """
    Read and parse a config file.

    Raises:
        ConfigurationError: If the file cannot be read or does not validate.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        error_msg = f"Cannot read config file '{path}': {e}"
        logger.error(error_msg)
        raise ConfigurationError(error_msg) from e
    return parse_config(text, command, output_dir)
