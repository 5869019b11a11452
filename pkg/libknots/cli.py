__doc__ = """\
Knot invariants and lower bounds for slice-type genera of knots and
strongly invertible knots

Environment options:
  KNOTS_CONFIG\tThe path to the configuration file (default
              \tpoints to ~/.config/knots/config.json)
  KNOT_CATALOG\tDefault knot catalog (CSV or JSON)
"""
import argparse
import json
import sys

from libknots.commands import CMD_LIST
from libknots.commands.shared import parser_add_global_flags
from libknots.config import save_config, settings
from libknots.errors import KnotError
from libknots.util import logger, setup_logging


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kbt",
        description=__doc__,
        usage="kbt [GLOBAL OPTIONS] [COMMAND] ...",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    global_options = parser.add_argument_group("Global Options")
    global_options.add_argument(
        "-d", "--debug", action="store_true", help="Enables debug log messages"
    )
    global_options.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Enables verbose log messages (INFO level)",
    )
    parser_add_global_flags(parser, top_level=True)
    modules = parser.add_subparsers(title="Commands")

    for install_hook in CMD_LIST:
        if install_hook:
            install_hook(modules)
    for subparser in modules.choices.values():
        parser_add_global_flags(subparser)
    return parser


def run(args: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        argv = parser.parse_args(args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    if not hasattr(argv, "func"):
        parser.print_help()
        return 0

    if argv.debug or argv.verbose:
        setup_logging("DEBUG")
    else:
        setup_logging("INFO")

    logger.debug(f"Running command {argv.func.__module__}")
    try:
        argv.func(argv)
    except KnotError as e:
        logger.debug(f"{e.code}: {e.message}")
        sys.stderr.write(json.dumps({"error": e.to_dict()}, sort_keys=True, default=str) + "\n")
        return 1
    except KeyboardInterrupt:
        logger.log(12, "Interrupted by user")
        return 1
    finally:
        if settings.persistConfig:
            logger.debug("Saving configuration...")
            save_config()
    return 0


def cli_entry():
    sys.exit(run())
