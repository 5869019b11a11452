import argparse

from libknots.bounds import STABILIZATION, STABILIZATION_AS_STATED, eq_stab_lower, stab_lower
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
from libknots.symmetric import full_diagram


def install_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "stab",
        help="Lower bound on the 1-handle stabilization distance",
        usage=parser_get_usage(__name__),
        description=(
            "Bounds the number of 1-handles needed to make two surfaces of genus h "
            "with common boundary K isotopic"
        ),
        formatter_class=argparse.MetavarTypeHelpFormatter,
    )
    parser_add_diagram(parser)
    parser_add_symmetric(parser, directed=False)
    parser_add_genus(parser)
    parser.set_defaults(func=cli)


def cli(argv: argparse.Namespace) -> None:
    even = getattr(argv, "even", False)
    as_stated = getattr(argv, "as_stated", False)
    result = {"h": argv.h, "theorem": STABILIZATION_AS_STATED if as_stated else STABILIZATION}
    if has_symmetric(argv):
        d = load_directed(argv).diagram
        text = d.serialize()
        result["stab_lower"] = stab_lower(full_diagram(d), argv.h, even, as_stated)
        result["eq_stab_lower"] = eq_stab_lower(d, argv.h, even, as_stated)
    else:
        K = load_diagram(argv)
        text = K.serialize()
        result["stab_lower"] = stab_lower(K, argv.h, even, as_stated)

    if wants_json(argv):
        emit(argv, "stab", [text, f"h={argv.h}"], result)
        return
    console.print(f"stabilization distance >= {result['stab_lower']:g}")
    if "eq_stab_lower" in result:
        console.print(f"equivariant stabilization distance >= {result['eq_stab_lower']:g}")
