import argparse
import json
import pathlib
import sys
import typing

from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

from libknots import __version__
from libknots.catalog import Catalog, open_catalog
from libknots.config import settings
from libknots.diagram import KnotDiagram, parse_diagram
from libknots.errors import FileAccessError, MalformedInput
from libknots.symmetric import (
    DirectedSIKnot,
    build_Kn,
    equivariant_double,
    full_diagram,
    parse_symmetric,
)
from libknots.util import fingerprint

console = Console()


# --- output ---
class OutputEnvelope(BaseModel):
    command: str
    # command name followed by its normalised inputs
    echo: list[str]
    fingerprint: str
    result: typing.Any
    version: str = __version__


def wants_json(argv) -> bool:
    return bool(getattr(argv, "json", False) or settings.output.jsonOutput)


def emit(argv, command: str, inputs: typing.Sequence[str], result: typing.Any) -> None:
    """Write the JSON envelope for *result* to stdout (sorted keys, byte-stable)."""
    if isinstance(result, BaseModel):
        result = result.model_dump(mode="json")
    envelope = OutputEnvelope(
        command=command,
        echo=[command, *inputs],
        fingerprint=fingerprint("\n".join(inputs)),
        result=result,
    )
    sys.stdout.write(json.dumps(envelope.model_dump(mode="json"), sort_keys=True, indent=2) + "\n")


# --- global flags ---
def parser_add_global_flags(parser: argparse.ArgumentParser, top_level: bool = False) -> None:
    # repeated on every command so they may follow the command name
    default = (lambda value: value) if top_level else (lambda value: argparse.SUPPRESS)
    options = parser.add_argument_group("Output Options")
    options.add_argument(
        "--json", action="store_true", default=default(False), help="Emit a JSON envelope"
    )
    options.add_argument(
        "--catalog",
        type=str,
        default=default(None),
        help="Catalog file (default: $KNOT_CATALOG, config value or the shipped table)",
    )
    options.add_argument(
        "--even",
        action="store_true",
        default=default(False),
        help="Round super-slice bounds up to the next even integer",
    )
    options.add_argument(
        "--as-stated",
        action="store_true",
        default=default(False),
        help="Use the stronger stabilization bound g_ss - h (prints a warning)",
    )


# --- diagram inputs ---
def pd_code(text: str) -> tuple[str, str]:
    return ("pd", text)


def braid_word(text: str) -> tuple[str, str]:
    return ("braid", text)


def knot_name(text: str) -> tuple[str, str]:
    return ("name", text)


def diagram_file(text: str) -> tuple[str, str]:
    return ("file", text)


def parser_add_diagram(parser: argparse.ArgumentParser, multiple: bool = False) -> None:
    group = parser.add_argument_group("Diagram-Options")
    suffix = " (repeatable)" if multiple else ""
    group.add_argument("--pd", dest="inputs", action="append", type=pd_code, help=f"PD code{suffix}")
    group.add_argument(
        "--braid", dest="inputs", action="append", type=braid_word, help=f"Braid word 'BR(n; ...)'{suffix}"
    )
    group.add_argument(
        "--name", dest="inputs", action="append", type=knot_name, help=f"Catalog entry name{suffix}"
    )
    group.add_argument(
        "--file", dest="inputs", action="append", type=diagram_file, help=f"File holding a presentation{suffix}"
    )


def parser_add_symmetric(parser: argparse.ArgumentParser, directed: bool = True) -> None:
    group = parser.add_argument_group("Symmetric-Options")
    group.add_argument(
        "--sym",
        dest="symmetric",
        action="append",
        type=str,
        help="Symmetric diagram 'SYM[... | ...]' or catalog name of one",
    )
    group.add_argument(
        "--double-of", type=str, default=None, help="Use the equivariant double of this diagram or catalog name"
    )
    group.add_argument(
        "--build-kn", type=int, default=None, metavar="N", help="Use the knot K_N built from 8_20"
    )
    if directed:
        group.add_argument("--axis", type=str, choices=("h0", "h1"), default="h0", help="Half-axis (default: h0)")
        group.add_argument(
            "--direction", type=str, choices=("up", "down"), default="up", help="Orientation of the half-axis"
        )


def parser_add_genus(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--h", type=int, default=0, help="Genus of the surfaces being compared (default: 0)"
    )


def get_catalog(argv) -> Catalog:
    return open_catalog(getattr(argv, "catalog", None))


def _read_file(path: str) -> str:
    try:
        return pathlib.Path(path).read_text(encoding="utf-8").strip()
    except OSError as e:
        raise FileAccessError(f"cannot read {path}: {e}", path=path) from e


def resolve_diagram(text: str, catalog_lookup: typing.Callable[[], Catalog]) -> KnotDiagram:
    """Presentation text or, failing that, a catalog name."""
    stripped = text.strip()
    if stripped.startswith(("PD", "X", "[", "BR", "P(")):
        return parse_diagram(stripped)
    if stripped.startswith("SYM"):
        return full_diagram(parse_symmetric(stripped))
    return catalog_lookup().require(stripped).knot()


def load_diagrams(argv) -> list[KnotDiagram]:
    diagrams = []
    for kind, value in getattr(argv, "inputs", None) or []:
        if kind == "name":
            diagrams.append(get_catalog(argv).require(value).knot())
        elif kind == "file":
            diagrams.append(resolve_diagram(_read_file(value), lambda: get_catalog(argv)))
        else:
            diagrams.append(parse_diagram(value))
    return diagrams


def load_diagram(argv) -> KnotDiagram:
    diagrams = load_diagrams(argv)
    if len(diagrams) != 1:
        raise MalformedInput(f"expected exactly one diagram, got {len(diagrams)}")
    return diagrams[0]


def has_symmetric(argv) -> bool:
    return bool(
        getattr(argv, "symmetric", None)
        or getattr(argv, "double_of", None)
        or getattr(argv, "build_kn", None) is not None
    )


def load_directed_all(argv) -> list[DirectedSIKnot]:
    half_axis = getattr(argv, "axis", "h0")
    direction = getattr(argv, "direction", "up")
    knots = []
    for text in getattr(argv, "symmetric", None) or []:
        if text.strip().startswith("SYM"):
            diagram = parse_symmetric(text)
        else:
            entry = get_catalog(argv).require(text.strip())
            if entry.symmetric is None:
                raise MalformedInput(f"catalog entry {entry.name!r} is not a symmetric diagram")
            diagram = entry.symmetric
        knots.append(DirectedSIKnot(diagram=diagram, half_axis=half_axis, direction=direction))
    if getattr(argv, "double_of", None):
        K = resolve_diagram(argv.double_of, lambda: get_catalog(argv))
        knots.append(equivariant_double(K).model_copy(update={"half_axis": half_axis, "direction": direction}))
    if getattr(argv, "build_kn", None) is not None:
        seed = get_catalog(argv).require("8_20_tau").symmetric
        k = build_Kn(argv.build_kn, seed=seed)
        knots.append(k.model_copy(update={"half_axis": half_axis, "direction": direction}))
    return knots


def load_directed(argv) -> DirectedSIKnot:
    knots = load_directed_all(argv)
    if len(knots) != 1:
        raise MalformedInput(f"expected exactly one symmetric input, got {len(knots)}")
    return knots[0]


# --- human output ---
def print_fields(title: str, rows: typing.Iterable[tuple[str, typing.Any]]) -> None:
    table = Table(title=title, show_header=False, title_justify="left")
    table.add_column("Field", style="bold")
    table.add_column("Value")
    for field, value in rows:
        table.add_row(field, str(value))
    console.print(table)


def parser_get_usage(mod_name: str) -> str:
    parts = [part.rstrip("_").replace("_", "-") for part in mod_name.split(".")[2:]]
    return f"kbt [GLOBAL OPTIONS] {' '.join(parts)} [OPTIONS]..."
