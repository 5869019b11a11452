import argparse

from libknots.commands.shared import (
    console,
    emit,
    get_catalog,
    parser_get_usage,
    wants_json,
)
from libknots.symmetric import build_Kn


def install_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "build-kn",
        help="Builds the double-slice knot K_n with large equivariant genus",
        usage=parser_get_usage(__name__),
        description=(
            "Equivariant sum of 2n copies of the mirrored symmetric 8_20 and n "
            "equivariant doubles of 8_20"
        ),
        formatter_class=argparse.MetavarTypeHelpFormatter,
    )
    parser.add_argument("n", type=int, help="Number of rounds")
    parser.set_defaults(func=cli)


def cli(argv: argparse.Namespace) -> None:
    seed = get_catalog(argv).require("8_20_tau").symmetric
    k = build_Kn(argv.n, seed=seed)
    text = k.diagram.serialize()
    if wants_json(argv):
        emit(argv, "build-kn", [f"n={argv.n}"], {"diagram": text, "half_axis": k.half_axis, "direction": k.direction})
        return
    console.print(text, markup=False, highlight=False, soft_wrap=True)
