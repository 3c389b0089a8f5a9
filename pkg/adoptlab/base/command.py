# adoptlab/base/command.py

from typing import TYPE_CHECKING, Dict, List
import pandas as pd
import logging
from ..exceptions import ConfigurationError

if TYPE_CHECKING:
    from ..cli.config import RunConfig

# Initialize logger for this module
logger = logging.getLogger('adoptlab.base.command')


class BaseCommand:
    """
    Base class for command-line subcommands.

    A command turns a validated run configuration into named tables; the
    processor owns every file write.
    """
    name: str = ""
    description: str = ""

    def __init__(self, config: "RunConfig") -> None:
        logger.debug(f"Initializing command '{self.name}'.")
        self.config = config

    def run(self) -> Dict[str, pd.DataFrame]:
        """
        Execute the command.

        Returns:
            Dict[str, pd.DataFrame]: Output tables keyed by file stem.

        Raises:
            NotImplementedError: If the subclass does not override it.
        """
        raise NotImplementedError("Subclasses must implement run.")

    def report(self, tables: Dict[str, pd.DataFrame]) -> List[str]:
        """Lines printed to stdout after a successful run."""
        return []

    def require(self, value, field: str):
        """Return ``value`` or fail when a config section this command needs is missing."""
        if value is None:
            error_msg = f"Command '{self.name}' needs '{field}' in the run configuration."
            logger.error(error_msg)
            raise ConfigurationError(error_msg)
        return value
