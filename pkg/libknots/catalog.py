"""Knot tables: the shipped catalog, CSV/JSON ingestion and cross-checks.

CSV columns are ``name,presentation_type,presentation,det,signature,alexander``;
``alexander`` is a space separated symmetric coefficient list normalised so
that the polynomial is 1 at t = 1. Reference fields may be left empty.
"""

import csv
import functools
import io
import pathlib
from typing import Iterable, Iterator, Literal

from pydantic import BaseModel, ConfigDict, TypeAdapter, ValidationError

from libknots.config import BUILTIN_CATALOG_PATH, catalog_path
from libknots.diagram import KnotDiagram, parse_diagram
from libknots.errors import (
    CatalogIOError,
    CatalogMissing,
    CrossCheckMismatch,
    KnotError,
    ParseError,
    SchemaError,
)
from libknots.exactalg import LaurentPoly
from libknots.invariants import alexander, determinant, signature
from libknots.symmetric import SymmetricDiagram, full_diagram, parse_symmetric
from libknots.util import logger

COLUMNS = ("name", "presentation_type", "presentation", "det", "signature", "alexander")

# knots whose double branched cover has H1 = Z/n + Z/n; only entries with a
# verified presentation are shipped, the rest are reserved for user tables
RESERVED_NAMES = (
    "9_46",
    "10_99",
    "10_123",
    "10_155",
    "11n_74",
    "12a_427",
    "12a_1105",
    "12n_268",
    "12n_397",
    "12n_414",
    "12n_605",
    "12n_636",
    "12n_706",
    "12n_817",
    "12n_838",
)

PresentationType = Literal["pd", "braid", "pretzel", "symmetric"]


# --- models ---
class CatalogEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    presentation_type: PresentationType
    presentation: str
    det: int | None = None
    signature: int | None = None
    alexander: tuple[int, ...] | None = None

    @property
    def symmetric(self) -> SymmetricDiagram | None:
        if self.presentation_type != "symmetric":
            return None
        return parse_symmetric(self.presentation, name=self.name)

    def knot(self) -> KnotDiagram:
        if self.presentation_type == "symmetric":
            return full_diagram(self.symmetric)  # type: ignore[arg-type]
        return parse_diagram(self.presentation, name=self.name)

    def validate_presentation(self) -> None:
        try:
            self.knot()
        except KnotError as e:
            raise ParseError(
                f"entry {self.name!r}: {e.message}", entry=self.name, cause=e.to_dict()
            ) from e


class Mismatch(BaseModel):
    field: str
    expected: str
    computed: str


class CrossCheckReport(BaseModel):
    name: str
    mismatches: list[Mismatch] = []

    @property
    def ok(self) -> bool:
        return not self.mismatches


class Catalog:
    def __init__(self, entries: Iterable[CatalogEntry], path: pathlib.Path | None = None) -> None:
        self.path = path
        self.entries = {entry.name: entry for entry in entries}

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def get(self, name: str) -> CatalogEntry | None:
        return self.entries.get(name)

    def require(self, name: str) -> CatalogEntry:
        entry = self.entries.get(name)
        if entry is None:
            hint = " (reserved name, not shipped)" if name in RESERVED_NAMES else ""
            raise CatalogMissing(f"no catalog entry named {name!r}{hint}", name=name)
        return entry


# --- reading and writing ---
def _optional_int(value: str) -> int | None:
    value = value.strip()
    return int(value) if value else None


def _parse_row(row: dict[str, str]) -> CatalogEntry:
    name = (row.get("name") or "").strip()
    try:
        alexander_text = (row.get("alexander") or "").strip()
        entry = CatalogEntry(
            name=name,
            presentation_type=row["presentation_type"].strip(),  # type: ignore[arg-type]
            presentation=row["presentation"].strip(),
            det=_optional_int(row.get("det") or ""),
            signature=_optional_int(row.get("signature") or ""),
            alexander=tuple(int(c) for c in alexander_text.split()) if alexander_text else None,
        )
    except (ValueError, ValidationError) as e:
        raise ParseError(f"entry {name!r}: {e}", entry=name) from e
    entry.validate_presentation()
    return entry


def _load_csv(text: str) -> list[CatalogEntry]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        return []
    missing = [column for column in COLUMNS if column not in reader.fieldnames]
    if missing:
        raise SchemaError(f"catalog is missing columns {missing}", missing=missing)
    return [_parse_row(row) for row in reader]


def _load_json(text: str) -> list[CatalogEntry]:
    if not text.strip():
        return []
    try:
        raw = TypeAdapter(list[dict]).validate_json(text)
    except ValidationError as e:
        raise SchemaError(f"catalog JSON must be a list of objects: {e}") from e
    entries = []
    for item in raw:
        name = str(item.get("name", ""))
        try:
            entry = CatalogEntry.model_validate(item)
        except ValidationError as e:
            raise ParseError(f"entry {name!r}: {e}", entry=name) from e
        entry.validate_presentation()
        entries.append(entry)
    return entries


def _format_of(path: pathlib.Path, format: str | None) -> str:
    format = format or ("json" if path.suffix.lower() == ".json" else "csv")
    if format not in ("csv", "json"):
        raise SchemaError(f"unknown catalog format {format!r}")
    return format


def load(path: str | pathlib.Path, format: str | None = None) -> list[CatalogEntry]:
    path = pathlib.Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise CatalogIOError(f"cannot read catalog {path}: {e}", path=str(path)) from e
    entries = _load_json(text) if _format_of(path, format) == "json" else _load_csv(text)
    logger.debug(f"Loaded {len(entries)} catalog entries from {path}")
    return entries


def dumps(entries: Iterable[CatalogEntry], format: str = "csv") -> str:
    entries = list(entries)
    if format == "json":
        return TypeAdapter(list[CatalogEntry]).dump_json(entries, indent=2).decode() + "\n"
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for entry in entries:
        writer.writerow(
            {
                "name": entry.name,
                "presentation_type": entry.presentation_type,
                "presentation": entry.presentation,
                "det": "" if entry.det is None else entry.det,
                "signature": "" if entry.signature is None else entry.signature,
                "alexander": " ".join(map(str, entry.alexander or ())),
            }
        )
    return buffer.getvalue()


def save(entries: Iterable[CatalogEntry], path: str | pathlib.Path, format: str | None = None) -> None:
    path = pathlib.Path(path)
    try:
        path.write_text(dumps(entries, _format_of(path, format)), encoding="utf-8")
    except OSError as e:
        raise CatalogIOError(f"cannot write catalog {path}: {e}", path=str(path)) from e


@functools.cache
def builtin() -> Catalog:
    return Catalog(load(BUILTIN_CATALOG_PATH), BUILTIN_CATALOG_PATH)


def open_catalog(path: str | None = None) -> Catalog:
    """Catalog from an explicit path, KNOT_CATALOG, the config file or the shipped table."""
    resolved = catalog_path(path)
    if resolved == BUILTIN_CATALOG_PATH:
        return builtin()
    return Catalog(load(resolved), resolved)


# --- cross-checks ---
def cross_check(entry: CatalogEntry) -> CrossCheckReport:
    report = CrossCheckReport(name=entry.name)
    if entry.det is None and entry.signature is None and entry.alexander is None:
        return report

    K = entry.knot()
    if entry.det is not None:
        computed = determinant(K)
        if computed != entry.det:
            report.mismatches.append(Mismatch(field="det", expected=str(entry.det), computed=str(computed)))
    if entry.signature is not None:
        computed = signature(K)
        if computed != entry.signature:
            report.mismatches.append(
                Mismatch(field="signature", expected=str(entry.signature), computed=str(computed))
            )
    if entry.alexander is not None:
        expected = LaurentPoly.symmetric(entry.alexander)
        computed_poly = alexander(K)
        if computed_poly != expected:
            report.mismatches.append(
                Mismatch(field="alexander", expected=str(expected), computed=str(computed_poly))
            )
    return report


def require_consistent(entry: CatalogEntry) -> None:
    report = cross_check(entry)
    if not report.ok:
        fields = [m.field for m in report.mismatches]
        raise CrossCheckMismatch(
            f"entry {entry.name!r} disagrees with its reference values in {fields}",
            entry=entry.name,
            mismatches=[m.model_dump() for m in report.mismatches],
        )
