# adoptlab/processor.py

import time
from pathlib import Path
from typing import Dict, List, Optional
import pandas as pd
from .cli.config import RunConfig
from .cli.io import LOG_NAME, manifest_record, prepare_output_dir, write_manifest, write_tables
from .registry import CommandRegistry
from .exceptions import AdoptLabError, ConfigurationError, NumericalError, RegistrationError
from .logging_config import close_file_handlers, setup_logging
import logging

# Initialize logger for this module
logger = logging.getLogger('adoptlab.processor')

EXIT_OK = 0
EXIT_CONFIGURATION = 1
EXIT_NUMERICAL = 2


def exit_code_for(error: BaseException) -> int:
    """1 for configuration and registration problems, 2 for numerical failures."""
    if isinstance(error, (ConfigurationError, RegistrationError)):
        return EXIT_CONFIGURATION
    return EXIT_NUMERICAL


class RunProcessor:
    """
    Runs one configured command and records it.

    Tables returned by the command are written one file each, in order, by
    this processor alone; the manifest is written last, also when the
    command fails.
    """

    def __init__(self, config: RunConfig) -> None:
        """
        Args:
            config (RunConfig): Validated run configuration.

        Raises:
            TypeError: If 'config' is not a RunConfig.
        """
        if not isinstance(config, RunConfig):
            error_msg = f"config must be an instance of RunConfig, got {type(config)} instead."
            logger.error(error_msg)
            raise TypeError(error_msg)
        self.config = config
        self.tables: Dict[str, pd.DataFrame] = {}
        self.outputs: List[str] = []
        self.lines: List[str] = []
        self.error: Optional[Dict[str, str]] = None
        self.manifest_path: Optional[Path] = None

    def run(self, version: str = "") -> int:
        """
        Execute the command and write its outputs and manifest.

        Returns:
            int: Exit code (0 success, 1 configuration error, 2 numerical failure).
        """
        if not version:
            from . import __version__ as version
        try:
            out_dir = prepare_output_dir(self.config.outputDir)
        except ConfigurationError as e:
            self.error = {"type": type(e).__name__, "message": str(e)}
            return EXIT_CONFIGURATION

        log_file = str(out_dir / LOG_NAME)
        setup_logging(log_file=log_file)
        logger.info(f"Running '{self.config.command}' into {out_dir}")
        start = time.perf_counter()
        code = EXIT_OK
        try:
            command = CommandRegistry.get_command(self.config.command)(self.config)
            self.tables = command.run()
            self.outputs = write_tables(out_dir, self.tables)
            self.lines = command.report(self.tables)
        except AdoptLabError as e:
            code = exit_code_for(e)
            self.error = {"type": type(e).__name__, "message": str(e)}
            logger.error(f"'{self.config.command}' failed with {type(e).__name__}: {e}")
        except Exception as e:
            code = EXIT_NUMERICAL
            self.error = {"type": type(e).__name__, "message": str(e)}
            logger.exception(f"Unexpected error while running '{self.config.command}'.")
        finally:
            elapsed = time.perf_counter() - start
            record = manifest_record(self.config, version, elapsed, self.outputs, self.error)
            self.manifest_path = write_manifest(out_dir, record)
            logger.info(f"'{self.config.command}' finished with exit code {code} in {elapsed:.2f}s")
            close_file_handlers(log_file)
        return code
