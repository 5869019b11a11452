import argparse

from libknots.commands.shared import (
    console,
    emit,
    load_diagram,
    parser_add_diagram,
    parser_get_usage,
    wants_json,
)
from libknots.symmetric import equivariant_double


def install_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "double",
        help="Builds the equivariant double K # rK",
        usage=parser_get_usage(__name__),
        description="Prints the symmetric diagram of K # rK whose involution swaps the summands",
        formatter_class=argparse.MetavarTypeHelpFormatter,
    )
    parser_add_diagram(parser)
    parser.set_defaults(func=cli)


def cli(argv: argparse.Namespace) -> None:
    K = load_diagram(argv)
    k = equivariant_double(K)
    text = k.diagram.serialize()
    if wants_json(argv):
        emit(argv, "double", [K.serialize()], {"diagram": text, "half_axis": k.half_axis, "direction": k.direction})
        return
    console.print(text, markup=False, highlight=False, soft_wrap=True)
