"""
Command-line front end.

Reads a JSON problem file (root data, polytope, optional named functions and
quadrature settings), runs one analysis and prints its report on standard
output. Logs go to standard error through rich.
"""

import argparse
import logging
import sys

from rich.console import Console
from rich.logging import RichHandler

from groupke.commands import COMMANDS
from groupke.errors import GroupKEError

INVALID_INPUT_EXIT_CODE = 2


def _add_common_arguments(parser: argparse.ArgumentParser, uses_quadrature: bool) -> None:
    problem_group = parser.add_argument_group("Problem")
    problem_group.add_argument(
        "--input",
        type=str,
        required=True,
        help="Path to the JSON problem file",
    )

    if uses_quadrature:
        quadrature_group = parser.add_argument_group("Quadrature")
        quadrature_group.add_argument(
            "--step",
            type=float,
            default=None,
            help="Midpoint grid step (problem file, then 0.01)",
        )
        quadrature_group.add_argument(
            "--radius",
            type=float,
            default=None,
            help="Cap on the truncation radius (problem file, then 500)",
        )
        quadrature_group.add_argument(
            "--tail-tol",
            type=float,
            default=None,
            help="Bound on the neglected tail mass (problem file, then 1e-10)",
        )
        quadrature_group.add_argument(
            "--workers",
            type=int,
            default=None,
            help="Threads evaluating grid chunks (problem file, then 1)",
        )

    output_group = parser.add_argument_group("Output")
    output_group.add_argument(
        "--json",
        action="store_true",
        help="Print the report as JSON instead of a table",
    )
    output_group.add_argument(
        "--verbose",
        "-v",
        action="store_true",
        help="Enable debug logging",
    )


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """Parse command-line arguments."""
    parser = argparse.ArgumentParser(
        prog="groupke",
        description="Kähler-Einstein criterion and reduced Ding functional for group compactifications",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, command in COMMANDS.items():
        subparser = subparsers.add_parser(
            name,
            help=command.help,
            description=command.__doc__,
            formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        )
        _add_common_arguments(subparser, command.uses_quadrature)
        command.add_arguments(subparser)
        subparser.set_defaults(step=None, radius=None, tail_tol=None, workers=None)
    return parser.parse_args(argv)


def setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), rich_tracebacks=True)],
        force=True,
    )


def main(argv: list[str] | None = None) -> int:
    """Run one subcommand and return its exit code."""
    args = parse_args(argv)
    setup_logging(args.verbose)
    command = COMMANDS[args.command]()
    try:
        return command.run(args)
    except GroupKEError as e:
        logging.error(str(e))
        return INVALID_INPUT_EXIT_CODE


if __name__ == "__main__":
    sys.exit(main())
