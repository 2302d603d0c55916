import json
import math

import pytest

from magsteklov.builders import ball4_steklov_spectrum, circle_laplacian_spectrum
from magsteklov.cli import output


def test_format_float_round_trips():
    for value in (0.1, 1 / 3, 2.0, 1e-300, 123456.789):
        assert float(output.format_float(value)) == value


def test_spectrum_rows_of_angular_and_hopf_tables():
    rows = output.spectrum_rows([circle_laplacian_spectrum(0.0, 1), ball4_steklov_spectrum(0.0, 1)])
    assert len(rows) == 6
    assert rows[0] == {"t": 0.0, "model": "circle", "k": 0, "p1": None, "p2": None, "sign": "plus", "value": 0.0,
                       "multiplicity": 1}
    assert rows[-1]["sign"] is None
    assert rows[-1]["multiplicity"] == 2


def test_csv_leaves_unused_cells_empty(read_csv):
    text = output.render_csv(output.spectrum_rows([circle_laplacian_spectrum(0.5, 1)]))
    assert text.splitlines()[0] == "t,model,k,p1,p2,sign,value,multiplicity"
    rows = read_csv(text)
    assert rows[0]["p1"] == ""
    assert [float(r["value"]) for r in rows] == pytest.approx([0.25, 0.25, 2.25])


def test_csv_with_custom_columns():
    assert output.render_csv([{"a": 1, "b": True}], ("a", "b", "c")) == "a,b,c\n1,True,\n"


def test_json_envelope():
    text = output.render_json("spectrum", {"k_max": 1}, "rows", [{"value": math.inf}])
    payload = json.loads(text)
    assert payload == {"schema_version": 1, "command": "spectrum", "config": {"k_max": 1},
                       "rows": [{"value": None}]}
    assert text.endswith("\n")


def test_svg_is_deterministic():
    series = output.spectrum_series([circle_laplacian_spectrum(t, 1) for t in (0.0, 0.5, 1.0)])
    assert set(series) == {"circle(k=0, plus)", "circle(k=1, minus)", "circle(k=1, plus)"}
    first = output.render_svg(series, "circle")
    assert "<svg" in first
    assert output.render_svg(series, "circle") == first


def test_emit_to_stdout(capsys):
    output.emit("hello\n")
    assert capsys.readouterr().out == "hello\n"


def test_emit_to_file_leaves_no_temporary(tmp_path):
    target = tmp_path / "table.csv"
    output.emit("a,b\n", target)
    assert target.read_text() == "a,b\n"
    assert [p.name for p in tmp_path.iterdir()] == ["table.csv"]


def test_emit_into_a_missing_directory(tmp_path):
    with pytest.raises(OSError):
        output.emit("a\n", tmp_path / "missing" / "table.csv")
