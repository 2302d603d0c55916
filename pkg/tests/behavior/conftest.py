import math

import pytest
from pytest_bdd import given, parsers, then, when

from magsteklov import exc
from magsteklov.builders import builder_for, paired_gap_table
from magsteklov.cli import parse_polynomial
from magsteklov.geometry import frustration
from magsteklov.models import FrustrationSpec, SpectralModel


@pytest.fixture
def context():
    return {}


# --- Spectra ---

@given(parsers.parse("the {model} model truncated at k_max {k_max:d}"))
def truncated_model(context, model, k_max):
    context["model"] = SpectralModel(model)
    context["k_max"] = k_max


@when(parsers.parse("the spectrum is built at field strength {t:g}"))
def build_spectrum(context, t):
    context["table"] = builder_for(context["model"]).build(t, context["k_max"])


@when(parsers.parse("the spectrum is paired with its boundary Laplacian at field strength {t:g} up to rank {n:d}"))
def pair_spectrum(context, t, n):
    boundary_model = {SpectralModel.DISK2: SpectralModel.CIRCLE, SpectralModel.BALL4: SpectralModel.SPHERE3}
    steklov = builder_for(context["model"]).build(t, context["k_max"])
    boundary = builder_for(boundary_model[context["model"]]).build(t, context["k_max"])
    context["gaps"] = paired_gap_table(steklov, boundary, n)


@then(parsers.parse('the sorted values should be "{values}"'))
def check_values(context, values):
    expected = [float(v) for v in values.split(",")]
    assert context["table"].values() == pytest.approx(expected, abs=1e-12)


@then("the lowest value should be 2 coth(1) - 2")
def check_ball4_closed_form(context):
    assert context["table"].values()[0] == pytest.approx(2 / math.tanh(1) - 2, abs=1e-12)


@then(parsers.parse("the lowest value should be {value:g}"))
def check_lowest_value(context, value):
    assert context["table"].values()[0] == pytest.approx(value, abs=1e-12)


@then("every gap should be 0")
def check_gaps(context):
    assert all(row.gap == pytest.approx(0.0, abs=1e-12) for row in context["gaps"])


# --- Frustration ---

@given(parsers.parse('the angular profile "{g}" on the {region} of radius {radius:g}'))
def angular_profile(context, g, region, radius):
    context["spec"] = FrustrationSpec(profile=parse_polynomial(g), r_outer=radius,
                                      punctured=region == "punctured disk")


@when("the frustration constant is computed")
def compute_frustration(context):
    try:
        context["result"] = frustration(context["spec"])
    except exc.InvalidParams as error:
        context["error"] = error


@then(parsers.parse("the frustration constant should be {numerator:g} pi / {denominator:d}"))
def check_frustration(context, numerator, denominator):
    assert context["result"].value == pytest.approx(numerator * math.pi / denominator, abs=1e-10)


@then(parsers.parse("the minimizing shift should be {shift:d}"))
def check_shift(context, shift):
    assert context["result"].minimizing_integer == shift


@then("the computation should be refused as ill-defined at the origin")
def check_refused(context):
    assert isinstance(context.get("error"), exc.IllDefinedAtOrigin)
