# adoptlab/registry.py

from typing import Dict, List, Type
from .base.command import BaseCommand
from .exceptions import RegistrationError
import logging

# Initialize logger for this module
logger = logging.getLogger('adoptlab.registry')


class CommandRegistry:
    """
    Registry mapping subcommand names to command classes.
    """
    _registry: Dict[str, Type[BaseCommand]] = {}

    @classmethod
    def register(cls, name: str, command: Type[BaseCommand]) -> None:
        """
        Register a command class under ``name``.

        Args:
            name (str): Subcommand name (e.g., 'simulate').
            command (Type[BaseCommand]): Class implementing the subcommand.

        Raises:
            RegistrationError: If ``command`` is not a BaseCommand subclass.
        """
        logger.debug(f"Attempting to register command '{name}' -> {command}")
        if not isinstance(command, type) or not issubclass(command, BaseCommand):
            error_msg = f"Command '{name}' must be a BaseCommand subclass, got {command!r}."
            logger.error(error_msg)
            raise RegistrationError(error_msg)
        cls._registry[name] = command
        logger.debug(f"Command '{name}' registered successfully.")

    @classmethod
    def get_command(cls, name: str) -> Type[BaseCommand]:
        """
        Retrieve a command class by name.

        Raises:
            RegistrationError: If the name is not registered.
        """
        if name not in cls._registry:
            error_msg = f"Command '{name}' not found in the registry."
            logger.error(error_msg)
            raise RegistrationError(error_msg)
        return cls._registry[name]

    @classmethod
    def list_commands(cls) -> List[str]:
        """
        List all registered commands.

        Returns:
            List[str]: Command names in registration order.
        """
        commands = list(cls._registry.keys())
        logger.debug(f"Registered commands: {commands}")
        return commands
