import argparse
import math

from libknots.commands.shared import (
    emit,
    has_symmetric,
    load_diagram,
    load_directed,
    parser_add_diagram,
    parser_add_symmetric,
    parser_get_usage,
    print_fields,
    wants_json,
)
from libknots.invariants import (
    alexander,
    branched_cover_homology,
    determinant,
    signature,
    signature_function,
    unit_roots,
)
from libknots.seifert import seifert_circles
from libknots.symmetric import full_diagram


def install_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "inv",
        help="Computes the classical invariants of a knot",
        usage=parser_get_usage(__name__),
        description=(
            "Determinant, signature, Alexander polynomial, homology of the double "
            "branched cover and the extremes of the signature function"
        ),
        formatter_class=argparse.MetavarTypeHelpFormatter,
    )
    parser_add_diagram(parser)
    parser_add_symmetric(parser, directed=False)
    parser.set_defaults(func=cli)


def cli(argv: argparse.Namespace) -> None:
    K = full_diagram(load_directed(argv).diagram) if has_symmetric(argv) else load_diagram(argv)
    delta = alexander(K)
    homology = branched_cover_homology(K)
    step = signature_function(K)
    roots = unit_roots(K)
    result = {
        "crossings": K.crossing_count,
        "seifert_genus_bound": seifert_circles(K).genus,
        "det": determinant(K),
        "signature": signature(K),
        "alexander": str(delta),
        "alexander_coefficients": list(delta.coeffs),
        "homology": list(homology.invariant_factors),
        "min_generators": homology.rank,
        "max_abs_signature": step.max_abs(),
        "unit_roots": [root.theta / (2 * math.pi) for root in roots],
    }

    if wants_json(argv):
        emit(argv, "inv", [K.serialize()], result)
        return

    print_fields(
        f"Invariants of {K.name or 'knot'}",
        [
            ("Crossings", result["crossings"]),
            ("Determinant", result["det"]),
            ("Signature", result["signature"]),
            ("Alexander", result["alexander"]),
            ("H1(double cover)", homology),
            ("Max |signature|", result["max_abs_signature"]),
            ("Roots (turns)", ", ".join(f"{t:.6f}" for t in result["unit_roots"]) or "-"),
        ],
    )
