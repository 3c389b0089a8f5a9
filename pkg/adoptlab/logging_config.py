# adoptlab/logging_config.py

"""
Logging configuration for the adoptlab package.
"""

import logging
import os
import sys
from typing import Optional

FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level: int = logging.INFO, log_file: Optional[str] = None) -> logging.Logger:
    """
    Set up logging configuration.

    The console handler is attached once per process. A file handler is
    attached for each distinct ``log_file`` requested (the CLI asks for one
    inside every output directory).

    Args:
        level (int): Level for console output.
        log_file (Optional[str]): Path of a DEBUG-level log file.

    Returns:
        logging.Logger: Configured logger for the 'adoptlab' namespace.
    """
    logger = logging.getLogger('adoptlab')
    logger.setLevel(logging.DEBUG)
    formatter = logging.Formatter(FORMAT)

    console = [h for h in logger.handlers if getattr(h, "_adoptlab_console", False)]
    if not console:
        console_handler = logging.StreamHandler(sys.stdout)
        console_handler._adoptlab_console = True
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)
        console = [console_handler]
    for handler in console:
        handler.setLevel(level)

    if log_file is not None:
        path = os.path.abspath(log_file)
        known = {getattr(h, "baseFilename", None) for h in logger.handlers}
        if path not in known:
            file_handler = logging.FileHandler(path)
            file_handler.setLevel(logging.DEBUG)  # detailed logs in file
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)

    return logger


def close_file_handlers(log_file: Optional[str] = None) -> None:
    """Detach and close the file handler for ``log_file``, or every file handler when None."""
    logger = logging.getLogger('adoptlab')
    path = None if log_file is None else os.path.abspath(log_file)
    for handler in list(logger.handlers):
        if isinstance(handler, logging.FileHandler) and path in (None, handler.baseFilename):
            logger.removeHandler(handler)
            handler.close()
