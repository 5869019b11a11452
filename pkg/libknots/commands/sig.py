import argparse
import pathlib
import sys

from libknots.commands.shared import (
    console,
    emit,
    has_symmetric,
    load_diagram,
    load_directed,
    parser_add_diagram,
    parser_add_symmetric,
    parser_get_usage,
    wants_json,
)
from libknots.errors import FileAccessError
from libknots.invariants import sample, signature_function, svg_plot
from libknots.symmetric import full_diagram
from libknots.util import logger


def install_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "sig",
        help="Prints the signature function as a step function",
        usage=parser_get_usage(__name__),
        description=(
            "Computes the signature function on (0, 2pi). The default output is CSV "
            "with one row per interval between roots of the Alexander polynomial"
        ),
        formatter_class=argparse.MetavarTypeHelpFormatter,
    )
    parser_add_diagram(parser)
    parser_add_symmetric(parser, directed=False)
    parser.add_argument(
        "--svg", type=pathlib.Path, default=None, help="Also write a plot of the step function to this file"
    )
    parser.add_argument(
        "--theta", type=float, default=None, help="Only sample the signature at this angle"
    )
    parser.set_defaults(func=cli)


def cli(argv: argparse.Namespace) -> None:
    K = full_diagram(load_directed(argv).diagram) if has_symmetric(argv) else load_diagram(argv)
    if argv.theta is not None:
        value = sample(K, argv.theta)
        if wants_json(argv):
            emit(argv, "sig", [K.serialize(), repr(argv.theta)], {"theta": argv.theta, "value": value})
        else:
            console.print(value)
        return

    step = signature_function(K)
    if argv.svg is not None:
        try:
            argv.svg.write_text(svg_plot(step), encoding="utf-8")
        except OSError as e:
            raise FileAccessError(f"cannot write {argv.svg}: {e}", path=str(argv.svg)) from e
        logger.info(f"Wrote plot to {argv.svg}")

    if wants_json(argv):
        emit(argv, "sig", [K.serialize()], step)
    else:
        sys.stdout.write(step.to_csv())
