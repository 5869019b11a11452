import argparse

from rich.table import Table

from libknots.bounds import Bound, bound_report
from libknots.commands.shared import (
    console,
    emit,
    has_symmetric,
    load_diagram,
    load_directed,
    parser_add_diagram,
    parser_add_genus,
    parser_add_symmetric,
    parser_get_usage,
    wants_json,
)


def install_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "bounds",
        help="Lower bounds on double-slice, super-slice and stabilization distances",
        usage=parser_get_usage(__name__),
        description=(
            "Prints every lower bound that applies to the input together with the "
            "theorem it comes from. Symmetric input adds the equivariant bounds"
        ),
        formatter_class=argparse.MetavarTypeHelpFormatter,
    )
    parser_add_diagram(parser)
    parser_add_symmetric(parser)
    parser_add_genus(parser)
    parser.set_defaults(func=cli)


def cli(argv: argparse.Namespace) -> None:
    target = load_directed(argv) if has_symmetric(argv) else load_diagram(argv)
    report = bound_report(
        target,
        h=argv.h,
        even=getattr(argv, "even", False),
        as_stated=getattr(argv, "as_stated", False),
    )
    if wants_json(argv):
        emit(argv, "bounds", [target.serialize(), f"h={argv.h}"], report)
        return

    table = Table(title="Lower bounds", title_justify="left")
    table.add_column("Quantity", style="bold")
    table.add_column("Bound", justify="right")
    table.add_column("Theorem")
    table.add_column("From")
    for field in type(report).model_fields:
        bound = getattr(report, field)
        if isinstance(bound, Bound):
            table.add_row(field, f"{bound.value:g}", bound.theorem, bound.source)
    console.print(table)
