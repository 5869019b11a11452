import json
import sys

import pytest

from libknots.cli import cli_entry, run
from libknots.config import Config, save_config, settings


def kbt(monkeypatch, capsys, *args: str) -> tuple[int, str, str]:
    monkeypatch.setattr(sys, "argv", ["kbt", *args])
    with pytest.raises(SystemExit) as info:
        cli_entry()
    captured = capsys.readouterr()
    return info.value.code, captured.out, captured.err


def result_of(stdout: str) -> dict:
    return json.loads(stdout)["result"]


def error_of(stderr: str) -> dict:
    return json.loads(stderr.strip().splitlines()[-1])["error"]


def test_inv_unknot(monkeypatch, capsys):
    code, out, _ = kbt(monkeypatch, capsys, "inv", "--name", "unknot", "--json")
    assert code == 0
    result = result_of(out)
    assert result["det"] == 1
    assert result["alexander"] == "1"
    assert result["max_abs_signature"] == 0
    assert result["homology"] == []


def test_envelope(monkeypatch, capsys):
    _, out, _ = kbt(monkeypatch, capsys, "--json", "inv", "--name", "trefoil")
    envelope = json.loads(out)
    assert envelope["command"] == "inv"
    assert sorted(envelope) == ["command", "echo", "fingerprint", "result", "version"]
    assert envelope["echo"][0] == "inv"
    assert envelope["echo"][1].startswith("PD[")
    assert len(envelope["fingerprint"]) == 64

    _, again, _ = kbt(monkeypatch, capsys, "inv", "--pd", "PD[X(1,5,2,4), X(5,3,6,2), X(3,1,4,6)]", "--json")
    assert again == out


def test_bounds_9_46(monkeypatch, capsys):
    code, out, _ = kbt(monkeypatch, capsys, "bounds", "--name", "9_46", "--json")
    assert code == 0
    result = result_of(out)
    assert result["gss_lower"]["value"] == 2
    assert result["gss_lower"]["theorem"] == "Chen"
    assert result["stab_lower"]["value"] == 1


def test_half_axis_knot_of_K1(monkeypatch, capsys):
    code, out, _ = kbt(monkeypatch, capsys, "half", "--build-kn", "1", "--axis", "h0", "--json")
    assert code == 0
    diagram = result_of(out)["diagram"]

    code, out, _ = kbt(monkeypatch, capsys, "inv", "--pd", diagram, "--json")
    assert code == 0
    assert result_of(out)["max_abs_signature"] == 1


def test_emitted_diagrams_validate(monkeypatch, capsys):
    _, out, _ = kbt(monkeypatch, capsys, "double", "--name", "trefoil")
    code, _, _ = kbt(monkeypatch, capsys, "validate", "--sym", out.strip())
    assert code == 0

    _, out, _ = kbt(monkeypatch, capsys, "sum", "--name", "trefoil", "--name", "figure_eight", "--json")
    code, out, _ = kbt(monkeypatch, capsys, "validate", "--pd", result_of(out)["diagram"], "--json")
    assert code == 0
    assert result_of(out)["crossings"] == 7

    _, out, _ = kbt(monkeypatch, capsys, "mirror", "--name", "trefoil")
    code, _, _ = kbt(monkeypatch, capsys, "validate", "--pd", out.strip())
    assert code == 0

    _, out, _ = kbt(monkeypatch, capsys, "eqsum", "--sym", "8_20_tau", "--sym", "8_20_tau", "--json")
    code, out, _ = kbt(monkeypatch, capsys, "validate", "--sym", result_of(out)["diagram"], "--json")
    assert code == 0
    assert result_of(out)["crossings"] == 16


def test_domain_error(monkeypatch, capsys):
    code, out, err = kbt(monkeypatch, capsys, "validate", "--pd", "PD[X(1,2,3,4)]")
    assert code == 1
    assert out == ""
    error = error_of(err)
    assert error["code"] == "diagram.arc_degree"
    assert error["details"]["labels"] == [1, 2, 3, 4]


def test_missing_catalog_entry(monkeypatch, capsys):
    code, _, err = kbt(monkeypatch, capsys, "inv", "--name", "no_such_knot")
    assert code == 1
    assert error_of(err)["code"] == "catalog.missing"


def test_usage_errors():
    assert run(["no-such-command"]) == 2
    assert run(["bounds", "--axis", "h7"]) == 2


def test_sig_csv(monkeypatch, capsys):
    code, out, _ = kbt(monkeypatch, capsys, "sig", "--name", "trefoil")
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "theta_start,theta_end,value"
    assert [row.rsplit(",", 1)[1] for row in rows[1:]] == ["0", "-2", "0"]


def test_sig_svg(monkeypatch, capsys, tmp_path):
    path = tmp_path / "trefoil.svg"
    code, _, _ = kbt(monkeypatch, capsys, "sig", "--name", "trefoil", "--svg", str(path))
    assert code == 0
    assert "<svg" in path.read_text()


def test_stab_and_flags(monkeypatch, capsys):
    code, out, _ = kbt(monkeypatch, capsys, "stab", "--name", "9_46", "--json")
    assert code == 0
    assert result_of(out)["stab_lower"] == 1

    code, out, _ = kbt(monkeypatch, capsys, "stab", "--name", "9_46", "--as-stated", "--json")
    assert result_of(out)["stab_lower"] == 2

    code, out, _ = kbt(monkeypatch, capsys, "--even", "bounds", "--name", "8_20", "--json")
    assert result_of(out)["gss_lower"]["value"] == 2


def test_catalog_command(monkeypatch, capsys, tmp_path):
    code, out, _ = kbt(monkeypatch, capsys, "catalog", "--json")
    assert code == 0
    assert "trefoil" in result_of(out)

    code, _, _ = kbt(monkeypatch, capsys, "catalog", "--check")
    assert code == 0

    path = tmp_path / "export.csv"
    code, _, _ = kbt(monkeypatch, capsys, "catalog", "--export", str(path))
    assert code == 0
    code, out, _ = kbt(monkeypatch, capsys, "--catalog", str(path), "catalog", "--show", "trefoil", "--json")
    assert result_of(out)["det"] == 3


def test_knot_catalog_environment(monkeypatch, capsys, tmp_path):
    path = tmp_path / "tiny.csv"
    path.write_text(
        "name,presentation_type,presentation,det,signature,alexander\n"
        "tref,braid,BR(2; 1 1 1),3,-2,1 -1 1\n"
    )
    monkeypatch.setenv("KNOT_CATALOG", str(path))
    code, out, _ = kbt(monkeypatch, capsys, "inv", "--name", "tref", "--json")
    assert code == 0
    assert result_of(out)["det"] == 3


def test_seifert_matrix(monkeypatch, capsys):
    code, out, _ = kbt(monkeypatch, capsys, "seifert-matrix", "--name", "trefoil", "--reduced", "--json")
    assert code == 0
    result = result_of(out)
    assert result["size"] == 2
    assert len(result["matrix"]) == 2


def test_save_config(tmp_path):
    path = tmp_path / "knots" / "config.json"
    save_config(path)
    assert Config.model_validate_json(path.read_text()) == settings

    save_config(tmp_path)
    assert list(tmp_path.iterdir()) == [tmp_path / "knots"]


def test_seifert_matrix_of_the_canonical_surface(monkeypatch, capsys):
    code, out, _ = kbt(monkeypatch, capsys, "seifert-matrix", "--name", "6_1", "--json")
    assert code == 0
    result = result_of(out)
    assert result["size"] == 2
    assert len(result["cycles"]) == 2
    assert all(direction in (1, -1) for cycle in result["cycles"] for _, direction in cycle)


def test_validate_accepts_a_diagram_off_normal_position(monkeypatch, capsys):
    code, out, _ = kbt(monkeypatch, capsys, "validate", "--sym", "8_20_tau", "--json")
    assert code == 0
    result = result_of(out)
    assert result["valid"] is True
    assert result["normal_position"] is False
