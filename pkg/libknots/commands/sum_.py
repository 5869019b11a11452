import argparse

from libknots.commands.shared import (
    console,
    emit,
    load_diagrams,
    parser_add_diagram,
    parser_get_usage,
    wants_json,
)
from libknots.diagram import connect_sum_all
from libknots.errors import MalformedInput


def install_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "sum",
        help="Connected sum of knots",
        usage=parser_get_usage(__name__),
        description="Connected sum of the given diagrams in order; repeat the diagram options",
        formatter_class=argparse.MetavarTypeHelpFormatter,
    )
    parser_add_diagram(parser, multiple=True)
    parser.add_argument(
        "--times", type=int, default=1, help="Repeat the whole list this many times (default: 1)"
    )
    parser.set_defaults(func=cli)


def cli(argv: argparse.Namespace) -> None:
    knots = load_diagrams(argv)
    if not knots or argv.times < 1:
        raise MalformedInput("sum needs at least one diagram and --times >= 1")
    K = connect_sum_all(knots * argv.times)
    if wants_json(argv):
        emit(
            argv,
            "sum",
            [summand.serialize() for summand in knots] + [f"times={argv.times}"],
            {"diagram": K.serialize(), "crossings": K.crossing_count},
        )
        return
    console.print(K.serialize(), markup=False, highlight=False, soft_wrap=True)
