import argparse

from libknots.commands.shared import (
    console,
    emit,
    load_diagram,
    parser_add_diagram,
    parser_get_usage,
    wants_json,
)
from libknots.diagram import inverse, mirror, reverse


def install_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "mirror",
        help="Mirror image, reverse or concordance inverse of a knot",
        usage=parser_get_usage(__name__),
        description="Prints the mirror image of the diagram (or its reverse / -K with the flags below)",
        formatter_class=argparse.MetavarTypeHelpFormatter,
    )
    parser_add_diagram(parser)
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--reverse", action="store_true", help="Reverse the orientation instead")
    group.add_argument("--inverse", action="store_true", help="Mirror and reverse (-K)")
    parser.set_defaults(func=cli)


def cli(argv: argparse.Namespace) -> None:
    K = load_diagram(argv)
    if argv.reverse:
        operation, result = "reverse", reverse(K)
    elif argv.inverse:
        operation, result = "inverse", inverse(K)
    else:
        operation, result = "mirror", mirror(K)
    if wants_json(argv):
        emit(argv, "mirror", [K.serialize(), operation], {"operation": operation, "diagram": result.serialize()})
        return
    console.print(result.serialize(), markup=False, highlight=False, soft_wrap=True)
