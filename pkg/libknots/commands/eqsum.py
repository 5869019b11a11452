import argparse

from libknots.commands.shared import (
    console,
    emit,
    load_directed_all,
    parser_add_symmetric,
    parser_get_usage,
    wants_json,
)
from libknots.errors import MalformedInput
from libknots.symmetric import equivariant_connect_sum_all


def install_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "eqsum",
        help="Equivariant connected sum of directed strongly invertible knots",
        usage=parser_get_usage(__name__),
        description=(
            "Joins the summands in the order given, each at the head of the previous "
            "half-axis. Every summand uses the same --axis and --direction"
        ),
        formatter_class=argparse.MetavarTypeHelpFormatter,
    )
    parser_add_symmetric(parser)
    parser.set_defaults(func=cli)


def cli(argv: argparse.Namespace) -> None:
    knots = load_directed_all(argv)
    if not knots:
        raise MalformedInput("eqsum needs at least one summand")
    k = equivariant_connect_sum_all(knots)
    text = k.diagram.serialize()
    if wants_json(argv):
        emit(
            argv,
            "eqsum",
            [summand.serialize() for summand in knots],
            {"diagram": text, "half_axis": k.half_axis, "direction": k.direction},
        )
        return
    console.print(text, markup=False, highlight=False, soft_wrap=True)
