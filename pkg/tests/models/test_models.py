import math

import numpy as np
import pytest
from pydantic import ValidationError

from magsteklov import exc
from magsteklov.models import (
    Ball4Multiplicity,
    BoundReport,
    FrustrationSpec,
    HypothesisCheck,
    HypothesisStatus,
    ModeLabel,
    PolynomialProfile,
    RadialODEParams,
    SampledProfile,
    Sign,
    SpectralModel,
    SpectrumEntry,
    SpectrumTable,
    ThetaProfile,
)

# --- Radial ODE parameters ---

def test_disk_mode_coefficients():
    params = RadialODEParams.disk(3, Sign.MINUS, 2.0)
    assert (params.c, params.a, params.b, params.k_power) == (7, -12.0, 4.0, 3)


def test_ball4_mode_coefficients():
    params = RadialODEParams.ball4(2, 0, 1.0)
    assert (params.c, params.a, params.b, params.k_power) == (7, 4.0, 1.0, 2)


def test_nonpositive_friction_is_invalid():
    with pytest.raises(exc.InvalidParams):
        RadialODEParams(c=0, a=0, b=0, k_power=0).require_valid()


def test_negative_quadratic_coefficient_is_rejected():
    with pytest.raises(ValidationError):
        RadialODEParams(c=1, a=0, b=-1, k_power=0)


# --- Labels ---

def test_angular_label():
    label = ModeLabel.angular(SpectralModel.DISK2, 2, Sign.MINUS)
    assert str(label) == "disk2(k=2, minus)"
    assert label.p1 is None


def test_hopf_label():
    label = ModeLabel.hopf(SpectralModel.BALL4, 1, 2)
    assert label.k == 3
    assert str(label) == "ball4(p1=1, p2=2)"


def test_central_mode_is_listed_with_plus_only():
    with pytest.raises(ValidationError):
        ModeLabel.angular(SpectralModel.CIRCLE, 0, Sign.MINUS)


def test_labels_must_match_their_model():
    with pytest.raises(ValidationError):
        ModeLabel(model=SpectralModel.SPHERE3, k=1, sign=Sign.PLUS)
    with pytest.raises(ValidationError):
        ModeLabel(model=SpectralModel.BALL4, k=2, p1=1, p2=0)


def test_minus_sorts_before_plus():
    minus = ModeLabel.angular(SpectralModel.DISK2, 1, Sign.MINUS)
    plus = ModeLabel.angular(SpectralModel.DISK2, 1, Sign.PLUS)
    assert minus.sort_key < plus.sort_key


@pytest.mark.parametrize("convention, k, expected", [
    (Ball4Multiplicity.CLUSTER, 2, 3),
    (Ball4Multiplicity.ENTRY, 2, 9),
    (Ball4Multiplicity.CLUSTER, 0, 1),
])
def test_multiplicity_conventions(convention, k, expected):
    assert convention.of(k) == expected


# --- Tables ---

def entry(k, sign, value, multiplicity=1):
    return SpectrumEntry(label=ModeLabel.angular(SpectralModel.DISK2, k, Sign(sign)), value=value,
                         multiplicity=multiplicity)


def test_table_must_be_sorted():
    with pytest.raises(ValidationError):
        SpectrumTable(t=0.0, model=SpectralModel.DISK2, k_max=1,
                      entries=(entry(1, "plus", 1.0), entry(0, "plus", 0.0)))


def test_table_values_and_level_minima():
    table = SpectrumTable(t=0.0, model=SpectralModel.DISK2, k_max=1,
                          entries=(entry(0, "plus", 0.0), entry(1, "minus", 0.5, 2), entry(1, "plus", 1.5)))
    assert table.values() == [0.0, 0.5, 0.5, 1.5]
    assert table.values(with_multiplicity=False) == [0.0, 0.5, 1.5]
    assert table.level_minima() == {0: 0.0, 1: 0.5}
    assert table.size == 3


def test_table_lookup_of_a_missing_label():
    table = SpectrumTable(t=0.0, model=SpectralModel.DISK2, k_max=0, entries=(entry(0, "plus", 0.0),))
    with pytest.raises(KeyError):
        table.find(ModeLabel.angular(SpectralModel.DISK2, 1, Sign.PLUS))


def test_entries_are_nonnegative():
    with pytest.raises(ValidationError):
        entry(0, "plus", -1.0)


# --- Profiles ---

def test_polynomial_profile():
    profile = PolynomialProfile(coefficients=(-1.0, 0.0, 1.0))
    assert profile(np.array([0.0, 2.0])).tolist() == [-1.0, 3.0]
    assert profile.crossings(0.0, 0.0, 2.0) == pytest.approx([1.0])
    assert profile.extrema(-1.0, 2.0) == (pytest.approx(-1.0), pytest.approx(3.0))


def test_constant_profile_has_no_crossings():
    assert PolynomialProfile(coefficients=(2.0,)).crossings(-2.0, 0.0, 1.0) == []


def test_sampled_profile():
    profile = SampledProfile(radii=(0.0, 1.0, 2.0), values=(1.0, -1.0, 1.0))
    assert float(profile(0.5)) == 0.0
    assert profile.crossings(0.0, 0.0, 2.0) == [0.5, 1.0, 1.5]
    assert profile.extrema(0.0, 2.0) == (-1.0, 1.0)


def test_sampled_profile_needs_increasing_radii():
    with pytest.raises(ValidationError):
        SampledProfile(radii=(0.0, 0.0), values=(1.0, 1.0))


def test_frustration_spec_parses_either_profile():
    spec = FrustrationSpec.model_validate({"profile": {"kind": "sampled", "radii": [0, 1], "values": [0, 1]}})
    assert isinstance(spec.profile, SampledProfile)
    assert not spec.punctured_or_annular
    assert FrustrationSpec(profile=PolynomialProfile.power(1), r_inner=0.2).punctured_or_annular


# --- Bounds ---

def test_theta_flat_closed_form():
    theta = ThetaProfile(curvature=0.0, boundary=0.5, dimension=3, radius=1.0)
    assert theta.closed_form_integral() == pytest.approx((1 - 0.5 ** 3) / 1.5)
    assert float(theta(1.0)) == pytest.approx(0.25)


def test_theta_of_negative_curvature():
    theta = ThetaProfile(curvature=-1.0, boundary=0.0, dimension=2, radius=1.0)
    assert float(theta(1.0)) == pytest.approx(math.cosh(1.0))
    assert theta.closed_form_integral() is None


def test_report_applicability():
    ok = HypothesisCheck(description="a", status=HypothesisStatus.SATISFIED)
    unknown = HypothesisCheck(description="b", status=HypothesisStatus.NOT_CHECKED)
    assert BoundReport(name="x", hypotheses=(ok,)).applicable
    assert not BoundReport(name="x", hypotheses=(ok, unknown)).applicable
    assert BoundReport(name="x").model_dump()["applicable"] is True
