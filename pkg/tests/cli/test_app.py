import json
import math

import pytest

from magsteklov.cli import app, main
from magsteklov.models import BoundReport, ReportStatus


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


# --- spectrum ---

def test_spectrum_csv(capsys, read_csv):
    status, out, _ = run(capsys, "spectrum", "--t", "0", "--k-max", "1")
    assert status == app.EXIT_OK
    rows = read_csv(out)
    assert [(r["k"], r["sign"]) for r in rows] == [("0", "plus"), ("1", "minus"), ("1", "plus")]
    assert [float(r["value"]) for r in rows] == pytest.approx([0.0, 1.0, 1.0], abs=1e-12)


def test_spectrum_sweep_as_json(capsys):
    status, out, _ = run(capsys, "spectrum", "--model", "circle", "--t", "0:0.5:1", "--k-max", "1", "--format", "json")
    assert status == app.EXIT_OK
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    assert payload["command"] == "spectrum"
    assert payload["config"]["t"] == "0.0:0.5:1.0"
    assert len(payload["rows"]) == 9


def test_spectrum_of_the_4_ball(capsys, read_csv):
    status, out, _ = run(capsys, "spectrum", "--model", "ball4", "--t", "2", "--k-max", "0")
    assert status == app.EXIT_OK
    (row,) = read_csv(out)
    assert (row["p1"], row["p2"], row["sign"]) == ("0", "0", "")
    assert float(row["value"]) == pytest.approx(2 / math.tanh(1) - 2, abs=1e-12)


def test_spectrum_files_are_byte_identical(tmp_path, capsys):
    for name in ("first.csv", "second.csv"):
        assert main(["spectrum", "--t", "0:1:3", "--k-max", "3", "--output", str(tmp_path / name)]) == 0
    assert capsys.readouterr().out == ""
    assert (tmp_path / "first.csv").read_bytes() == (tmp_path / "second.csv").read_bytes()


def test_spectrum_svg(tmp_path):
    target = tmp_path / "spectrum.svg"
    assert main(["spectrum", "--t", "0:0.5:2", "--k-max", "2", "--format", "svg", "-o", str(target)]) == 0
    assert "<svg" in target.read_text()


def test_config_file_is_layered_under_flags(tmp_path, capsys, read_csv):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"model": "circle", "k_max": 4, "t": 0.5}))
    status, out, _ = run(capsys, "spectrum", "--config", str(path), "--k-max", "1")
    assert status == app.EXIT_OK
    assert len(read_csv(out)) == 3


# --- frustration and cheeger ---

def test_frustration_of_a_punctured_disk(capsys, read_csv):
    status, out, _ = run(capsys, "frustration", "--g", "r", "--r0", "2", "--punctured")
    assert status == app.EXIT_OK
    (row,) = read_csv(out)
    assert float(row["value"]) == pytest.approx(2 * math.pi, abs=1e-10)
    assert row["minimizing_integer"] == "-1"


def test_frustration_ill_defined_at_origin(capsys):
    status, _, err = run(capsys, "frustration", "--g", "1")
    assert status == app.EXIT_USAGE
    assert "origin" in err


def test_cheeger_report(capsys):
    status, out, _ = run(capsys, "cheeger", "--t", "1", "--s-grid", "0", "--format", "json")
    assert status == app.EXIT_OK
    report = json.loads(out)["report"]
    assert len(report["quotients"]) == 1
    assert report["diagnostics"][0]["rhs"] == pytest.approx(1 / 36)
    assert report["diagnostics"][0]["status"] == "ConsistentUpperEstimate"


def test_cheeger_csv_carries_the_diagnostic(capsys, read_csv):
    status, out, _ = run(capsys, "cheeger", "--t", "1", "--s-grid", "0")
    assert status == app.EXIT_OK
    quotient, diagnostic = read_csv(out)
    assert (quotient["domain"], quotient["status"]) == ("annulus", "")
    assert float(quotient["h"]) == pytest.approx(2 / 3)
    assert diagnostic["domain"] == "diagnostic"
    assert float(diagnostic["rhs"]) == pytest.approx(1 / 36)
    assert diagnostic["status"] == "ConsistentUpperEstimate"


# --- bounds ---

def test_upper_bound(capsys, read_csv):
    status, out, _ = run(capsys, "bounds", "--check", "upper", "--t", "0.5:0.5:1")
    assert status == app.EXIT_OK
    rows = read_csv(out)
    assert [r["status"] for r in rows] == ["Satisfied", "Satisfied"]
    assert rows[0]["name"] == "upper-bound-disk"


def test_gauge_bound_as_json(capsys):
    status, out, _ = run(capsys, "bounds", "--check", "gauge", "--t", "0.3", "--k-max", "12", "--format", "json")
    assert status == app.EXIT_OK
    assert json.loads(out)["report"][0]["satisfied"] is True


def test_comparison_rows_carry_their_field(capsys, read_csv):
    status, out, _ = run(capsys, "bounds", "--check", "comparison", "--t", "0:1:1", "--n", "1")
    assert status == app.EXIT_OK
    assert [float(r["t"]) for r in read_csv(out)] == [0.0, 1.0]


def test_report_only_rows_leave_satisfied_empty(capsys, read_csv):
    status, out, _ = run(capsys, "bounds", "--check", "comparison", "--t", "1", "--n", "1")
    assert status == app.EXIT_OK
    (row,) = read_csv(out)
    assert (row["status"], row["satisfied"]) == ("ReportOnly", "")


def test_verdict_rows_keep_satisfied(capsys, read_csv):
    status, out, _ = run(capsys, "bounds", "--check", "upper", "--t", "1")
    assert status == app.EXIT_OK
    (row,) = read_csv(out)
    assert (row["status"], row["satisfied"]) == ("Satisfied", "True")


def test_failed_check_exits_with_one(capsys, monkeypatch):
    monkeypatch.setattr(app, "upper_bound_disk",
                        lambda t, solver: BoundReport(name="upper-bound-disk", status=ReportStatus.FAILED))
    status, _, err = run(capsys, "bounds", "--check", "upper", "--t", "1")
    assert status == app.EXIT_CHECK_FAILED
    assert "upper-bound-disk" in err


def test_numerical_failure_exits_with_three(capsys):
    status, _, err = run(capsys, "bounds", "--check", "gauge", "--t", "2.5", "--k-max", "12")
    assert status == app.EXIT_NUMERIC
    assert "TruncationInsufficient" in err


# --- usage errors ---

def test_svg_needs_a_plottable_command(capsys):
    status, _, err = run(capsys, "frustration", "--format", "svg")
    assert status == app.EXIT_USAGE
    assert "svg" in err


def test_invalid_range(capsys):
    status, _, err = run(capsys, "spectrum", "--t", "5:1:0")
    assert status == app.EXIT_USAGE
    assert "magsteklov: error:" in err


def test_missing_config_file(tmp_path, capsys):
    status, _, _ = run(capsys, "spectrum", "--config", str(tmp_path / "missing.json"))
    assert status == app.EXIT_USAGE


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as error:
        main(["eigenvalues"])
    assert error.value.code == 2


def test_asymptotic_needs_large_fields(capsys):
    status, _, _ = run(capsys, "bounds", "--check", "asymptotic", "--t", "10")
    assert status == app.EXIT_USAGE


# --- figures ---

def test_figures(tmp_path):
    assert main(["figures", "--t", "0:1:2", "--k-max", "2", "--output", str(tmp_path)]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["ball4-steklov.svg", "disk-steklov.svg"]


def test_figures_need_a_directory(tmp_path, capsys):
    status, _, _ = run(capsys, "figures", "--output", str(tmp_path / "missing"))
    assert status == app.EXIT_USAGE
