# adoptlab/cli/main.py

import argparse
import sys
from typing import List, Optional
from .config import COMMANDS, load_config
from ..processor import EXIT_CONFIGURATION, RunProcessor
from ..exceptions import ConfigurationError
import logging

# Initialize logger for this module
logger = logging.getLogger('adoptlab.cli.main')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adoptlab",
        description="Evolutionary adoption dynamics of genuine and partial adopters.",
    )
    parser.add_argument("command", choices=COMMANDS, help="Subcommand to run.")
    parser.add_argument("--config", required=True, help="Path of the JSON run configuration.")
    parser.add_argument("--out", default=None, help="Output directory (overrides 'outputDir').")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Command-line entry point.

    Returns:
        int: 0 on success, 1 on a configuration error, 2 on a numerical failure.
    """
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config, args.command, args.out)
    except ConfigurationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIGURATION

    processor = RunProcessor(config)
    code = processor.run()
    for line in processor.lines:
        print(line)
    if processor.error is not None:
        print(f"error: {processor.error['type']}: {processor.error['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
