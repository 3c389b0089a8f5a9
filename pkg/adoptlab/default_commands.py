# adoptlab/default_commands.py

from .registry import CommandRegistry
from .cli.commands import (
    BasinsCommand,
    EquilibriaCommand,
    PolicyCommand,
    SimulateCommand,
    SweepRhoCommand,
    TrustCommand,
    VerifyAllCommand,
)
from .exceptions import RegistrationError
import logging

# Initialize logger for this module
logger = logging.getLogger('adoptlab.default_commands')

DEFAULT_COMMANDS = (
    SimulateCommand,
    BasinsCommand,
    EquilibriaCommand,
    SweepRhoCommand,
    TrustCommand,
    PolicyCommand,
    VerifyAllCommand,
)


def register_default_commands():
    """
    Register the built-in subcommands.

    Raises:
        RegistrationError: If registration of any default command fails.
    """
    logger.debug("Registering default commands.")
    try:
        for command in DEFAULT_COMMANDS:
            CommandRegistry.register(command.name, command)
    except RegistrationError as e:
        logger.exception("Failed to register default commands.")
        raise RegistrationError(f"Failed to register default commands: {e}") from e
    except Exception as e:
        logger.exception("An unexpected error occurred while registering default commands.")
        raise RegistrationError(f"An unexpected error occurred: {e}") from e

    logger.debug("All default commands registered.")
