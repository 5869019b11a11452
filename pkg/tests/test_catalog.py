import pytest

from libknots.catalog import (
    COLUMNS,
    RESERVED_NAMES,
    CatalogEntry,
    builtin,
    cross_check,
    dumps,
    load,
    open_catalog,
    require_consistent,
    save,
)
from libknots.errors import CatalogIOError, CatalogMissing, CrossCheckMismatch, ParseError, SchemaError
from libknots.invariants import alexander, branched_cover_homology, determinant


def test_builtin_catalog():
    catalog = builtin()
    assert len(catalog) >= 12
    assert "trefoil" in catalog
    assert catalog.get("trefoil").det == 3
    assert catalog.require("8_20_tau").symmetric is not None
    assert catalog.require("trefoil").symmetric is None
    assert {"9_46", "10_99", "10_123", "10_155"} <= {entry.name for entry in catalog}
    assert len(RESERVED_NAMES) == 15


def test_every_entry_matches_its_reference_values():
    for entry in builtin():
        report = cross_check(entry)
        assert report.ok, report.mismatches


def test_10_155_cover_homology():
    K = builtin().require("10_155").knot()
    assert determinant(K) == 25
    assert branched_cover_homology(K).invariant_factors == (5, 5)
    assert alexander(K).coeffs == (-1, 3, -5, 7, -5, 3, -1)


def test_missing_entry():
    with pytest.raises(CatalogMissing):
        builtin().require("3_7")
    with pytest.raises(CatalogMissing) as info:
        builtin().require("12n_268")
    assert "reserved" in info.value.message


def test_csv_round_trip(tmp_path):
    entries = list(builtin())
    path = tmp_path / "knots.csv"
    save(entries, path)
    assert path.read_text().splitlines()[0] == ",".join(COLUMNS)
    assert load(path) == entries


def test_json_round_trip(tmp_path):
    entries = list(builtin())[:4]
    path = tmp_path / "knots.json"
    save(entries, path)
    assert load(path) == entries
    assert dumps(entries, "json") == path.read_text()


def test_bad_entry_is_named(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text(
        ",".join(COLUMNS) + "\n"
        "fine,braid,BR(2; 1 1 1),3,-2,1 -1 1\n"
        'broken,pd,"PD[X(1,2,3,4)]",,,\n'
    )
    with pytest.raises(ParseError) as info:
        load(path)
    assert info.value.details["entry"] == "broken"


def test_missing_columns(tmp_path):
    path = tmp_path / "short.csv"
    path.write_text("name,presentation\ntrefoil,BR(2; 1 1 1)\n")
    with pytest.raises(SchemaError):
        load(path)


def test_unreadable_file(tmp_path):
    with pytest.raises(CatalogIOError):
        load(tmp_path / "absent.csv")


def test_mismatch_is_reported():
    entry = CatalogEntry(
        name="wrong", presentation_type="braid", presentation="BR(2; 1 1 1)", det=5, signature=-2
    )
    report = cross_check(entry)
    assert [m.field for m in report.mismatches] == ["det"]
    with pytest.raises(CrossCheckMismatch):
        require_consistent(entry)


def test_catalog_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "small.csv"
    save([builtin().require("trefoil")], path)
    monkeypatch.setenv("KNOT_CATALOG", str(path))
    catalog = open_catalog()
    assert list(catalog.entries) == ["trefoil"]
    other = tmp_path / "other.csv"
    save([builtin().require("unknot"), builtin().require("trefoil")], other)
    assert len(open_catalog(str(other))) == 2
