import json

import pytest
from pydantic import ValidationError

from magsteklov import exc
from magsteklov.cli import RunConfig, TRange, load_config, parse_polynomial
from magsteklov.models import Ball4Multiplicity, SpectralModel

# --- Ranges ---

def test_range_with_step():
    grid = TRange.parse("0:0.1:1")
    assert len(grid.values()) == 11
    assert grid.values()[3] == 0.3
    assert grid.values()[-1] == 1.0


def test_single_value_range():
    assert TRange.parse("2.5").values() == [2.5]
    assert TRange.parse(3).values() == [3.0]


def test_range_stop_off_the_grid():
    assert TRange.parse("0:0.4:1").values() == [0.0, 0.4, 0.8]


@pytest.mark.parametrize("text", ["1:2", "a:b:c", "0:0:1"])
def test_malformed_ranges(text):
    with pytest.raises((ValueError, ValidationError)):
        TRange.parse(text)


def test_reversed_range():
    with pytest.raises(ValidationError):
        TRange.parse("5:1:0")


def test_range_text_form():
    assert str(TRange.parse("0:0.5:2")) == "0.0:0.5:2.0"
    assert str(TRange.parse("1")) == "1.0"


# --- Polynomials ---

@pytest.mark.parametrize("text, expected", [
    ("r^2", (0.0, 0.0, 1.0)),
    ("1", (1.0,)),
    ("r", (0.0, 1.0)),
    ("0.5*r^3 - 2r", (0.0, -2.0, 0.0, 0.5)),
    ("-r^2 + r^2 + 1e-1", (0.1, 0.0, 0.0)),
    (" 2 r ^ 1 ", (0.0, 2.0)),
])
def test_parse_polynomial(text, expected):
    assert parse_polynomial(text).coefficients == pytest.approx(expected)


@pytest.mark.parametrize("text", ["", "x^2", "r^", "2**r"])
def test_parse_polynomial_rejects_garbage(text):
    with pytest.raises(ValueError):
        parse_polynomial(text)


# --- RunConfig ---

def test_defaults():
    config = RunConfig()
    assert config.command == "spectrum"
    assert config.model is SpectralModel.DISK2
    assert config.t.values() == [1.0]
    assert config.k_max == 5
    assert config.output_format == "csv"
    assert config.multiplicity is Ball4Multiplicity.CLUSTER


def test_strings_are_read_as_ranges():
    config = RunConfig(t="0:1:3", s_grid="0.5")
    assert config.t.values() == [0.0, 1.0, 2.0, 3.0]
    assert config.s_grid.values() == [0.5]


def test_unknown_fields_are_rejected():
    with pytest.raises(ValidationError):
        RunConfig(k_maximum=3)


def test_radii_are_ordered():
    with pytest.raises(ValidationError):
        RunConfig(r_inner=2.0, r0=1.0)


def test_tolerance_overrides_reach_the_solver():
    config = RunConfig(series_tail_tol=1e-12, riccati_threshold_b=50.0, cancellation_ratio=1e-3)
    policy = config.solver_policy()
    assert policy.series.tail_tol == 1e-12
    assert policy.riccati_threshold_b == 50.0
    assert config.ball4_config().cancellation_ratio == 1e-3


# --- Layering ---

def test_flags_override_the_config_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"k_max": 2, "model": "circle", "t": "0:0.5:1"}))
    config = load_config({"config_file": path, "k_max": 7, "model": None})
    assert config.k_max == 7
    assert config.model is SpectralModel.CIRCLE
    assert len(config.t.values()) == 3


def test_missing_config_file(tmp_path):
    with pytest.raises(exc.ConfigurationError):
        load_config({"config_file": tmp_path / "missing.json"})


@pytest.mark.parametrize("content", ["{not json", "[1, 2]"])
def test_malformed_config_file(tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    with pytest.raises(exc.ConfigurationError):
        load_config({"config_file": path})


def test_invalid_values_become_configuration_errors():
    with pytest.raises(exc.ConfigurationError, match="k_max"):
        load_config({"k_max": -1})
