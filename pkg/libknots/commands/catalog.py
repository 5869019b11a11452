import argparse
import pathlib

from rich.table import Table

from libknots.catalog import cross_check, save
from libknots.commands.shared import (
    console,
    emit,
    get_catalog,
    parser_get_usage,
    wants_json,
)
from libknots.errors import CrossCheckMismatch
from libknots.util import logger


def install_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "catalog",
        help="Lists, shows, checks or exports the knot catalog",
        usage=parser_get_usage(__name__),
        description=(
            "Without options the catalog entries are listed. The catalog is the file "
            "given by --catalog, $KNOT_CATALOG, the config file or the shipped table"
        ),
        formatter_class=argparse.MetavarTypeHelpFormatter,
    )
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--show", type=str, metavar="NAME", help="Show a single entry")
    group.add_argument(
        "--check",
        action="store_true",
        help="Recompute det, signature and Alexander polynomial of every entry",
    )
    group.add_argument(
        "--export", type=pathlib.Path, metavar="PATH", help="Write the catalog as CSV or JSON (by suffix)"
    )
    parser.set_defaults(func=cli)


def cli(argv: argparse.Namespace) -> None:
    catalog = get_catalog(argv)
    source = str(catalog.path)
    if argv.show:
        entry = catalog.require(argv.show)
        if wants_json(argv):
            emit(argv, "catalog", [source, argv.show], entry)
        else:
            console.print(entry.model_dump_json(indent=2), highlight=False)
        return

    if argv.export:
        save(catalog, argv.export)
        logger.info(f"Wrote {len(catalog)} entries to {argv.export}")
        return

    if argv.check:
        reports = [cross_check(entry) for entry in catalog]
        failed = [report for report in reports if not report.ok]
        if wants_json(argv):
            emit(argv, "catalog", [source, "check"], [report.model_dump() for report in reports])
        else:
            for report in reports:
                status = "[green]ok[/]" if report.ok else "[red]mismatch[/]"
                console.print(f"{report.name:<12} {status}")
                for mismatch in report.mismatches:
                    console.print(
                        f"  {mismatch.field}: expected {mismatch.expected}, computed {mismatch.computed}",
                        highlight=False,
                    )
        if failed:
            raise CrossCheckMismatch(
                f"{len(failed)} catalog entries disagree with their reference values",
                entries=[report.name for report in failed],
            )
        return

    if wants_json(argv):
        emit(argv, "catalog", [source], [entry.name for entry in catalog])
        return
    table = Table(title=f"Catalog {source}", title_justify="left")
    for column in ("Name", "Type", "det", "signature", "Presentation"):
        table.add_column(column)
    for entry in catalog:
        table.add_row(
            entry.name,
            entry.presentation_type,
            "" if entry.det is None else str(entry.det),
            "" if entry.signature is None else str(entry.signature),
            entry.presentation,
        )
    console.print(table)
