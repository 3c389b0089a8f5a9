# adoptlab/__init__.py

"""
adoptlab

Evolutionary game dynamics of genuine and partial adoption of a shared
clinical technology: replicator dynamics with a cost ratchet and trust
beliefs, equilibrium and basin analysis, and policy scenarios.
"""

from .registry import CommandRegistry
from .default_commands import register_default_commands
from .logging_config import setup_logging

__version__ = "0.1.0-beta"

# Set up logging
logger = setup_logging()
logger.info("Initializing adoptlab")

# Register the command-line subcommands
try:
    register_default_commands()
    logger.info("Default commands registered successfully.")
except Exception as e:
    logger.exception("Failed to register default commands.")
    raise RuntimeError("Failed to register default commands.") from e

__all__ = ["CommandRegistry", "__version__"]
