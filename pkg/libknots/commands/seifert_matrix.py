import argparse

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
from libknots.seifert import seifert_matrix
from libknots.symmetric import full_diagram


def install_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "seifert-matrix",
        help="Prints a Seifert matrix of the knot",
        usage=parser_get_usage(__name__),
        description=(
            "Seifert matrix of the canonical Seifert surface of the diagram, in the basis of "
            "fundamental cycles of its circle-band graph; --reduced shrinks it to a nonsingular "
            "S-equivalent matrix"
        ),
        formatter_class=argparse.MetavarTypeHelpFormatter,
    )
    parser_add_diagram(parser)
    parser_add_symmetric(parser, directed=False)
    parser.add_argument("--reduced", action="store_true", help="Reduce to a nonsingular matrix")
    parser.set_defaults(func=cli)


def cli(argv: argparse.Namespace) -> None:
    K = full_diagram(load_directed(argv).diagram) if has_symmetric(argv) else load_diagram(argv)
    V = seifert_matrix(K)
    if argv.reduced:
        V = V.reduced()
    if wants_json(argv):
        emit(
            argv,
            "seifert-matrix",
            [K.serialize(), f"reduced={argv.reduced}"],
            {
                "braid": str(V.braid) if V.braid else None,
                "cycles": [[list(band) for band in cycle] for cycle in V.cycles],
                "matrix": V.entries,
                "size": V.size,
            },
        )
        return
    if V.braid is not None:
        console.print(str(V.braid), markup=False, highlight=False, soft_wrap=True)
    for row in V.entries:
        console.print(" ".join(f"{a:3d}" for a in row), highlight=False)
