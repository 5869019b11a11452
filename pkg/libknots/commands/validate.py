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
    print_fields,
    wants_json,
)
from libknots.diagram import writhe
from libknots.symmetric import full_diagram, is_normal_position, validate_symmetry
from libknots.util import logger


def install_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "validate",
        help="Checks a diagram and prints its normalised form",
        usage=parser_get_usage(__name__),
        description=(
            "Parses a PD code, braid word, pretzel, catalog entry or symmetric diagram, "
            "checks that it describes a single oriented knot and prints the normalised text"
        ),
        formatter_class=argparse.MetavarTypeHelpFormatter,
    )
    parser_add_diagram(parser)
    parser_add_symmetric(parser, directed=False)
    parser.set_defaults(func=cli)


def cli(argv: argparse.Namespace) -> None:
    if has_symmetric(argv):
        k = load_directed(argv)
        validate_symmetry(k.diagram)
        K = full_diagram(k.diagram)
        normal = is_normal_position(k.diagram)
        if not normal:
            logger.warning("The symmetric diagram is not in normal position")
        text = k.diagram.serialize()
        result = {
            "valid": True,
            "symmetric": True,
            "diagram": text,
            "full_diagram": K.serialize(),
            "crossings": K.crossing_count,
            "writhe": writhe(K),
            "normal_position": normal,
        }
    else:
        K = load_diagram(argv)
        text = K.serialize()
        result = {
            "valid": True,
            "symmetric": False,
            "diagram": text,
            "crossings": K.crossing_count,
            "writhe": writhe(K),
        }

    if wants_json(argv):
        emit(argv, "validate", [text], result)
        return

    logger.debug(f"Fingerprint {K.fingerprint()}")
    console.print(text, markup=False, highlight=False, soft_wrap=True)
    print_fields(
        "Diagram",
        [(key, value) for key, value in result.items() if key not in ("diagram", "valid")],
    )
