import argparse

from libknots.commands.shared import (
    console,
    emit,
    load_directed,
    parser_add_symmetric,
    parser_get_usage,
    wants_json,
)
from libknots.symmetric import half_knot


def install_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "half",
        help="Extracts the half-axis knot of a strongly invertible knot",
        usage=parser_get_usage(__name__),
        description=(
            "Joins one arc of the knot between the two fixed points with the chosen "
            "half-axis and prints the resulting knot as a PD code"
        ),
        formatter_class=argparse.MetavarTypeHelpFormatter,
    )
    parser_add_symmetric(parser)
    parser.add_argument(
        "--arc", type=int, choices=(1, 2), default=1, help="Arc of the knot to use (default: 1)"
    )
    parser.set_defaults(func=cli)


def cli(argv: argparse.Namespace) -> None:
    k = load_directed(argv)
    K = half_knot(k, arc=argv.arc)
    if wants_json(argv):
        emit(
            argv,
            "half",
            [k.serialize(), f"arc={argv.arc}"],
            {"half_axis": k.half_axis, "arc": argv.arc, "crossings": K.crossing_count, "diagram": K.serialize()},
        )
        return
    console.print(K.serialize(), markup=False, highlight=False, soft_wrap=True)
