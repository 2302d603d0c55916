import math

import numpy as np
import pytest

from magsteklov import exc
from magsteklov.engines import (
    evaluate_profile,
    log_derivative_extension,
    log_derivative_solve,
    log_derivative_solve_batch,
    series_extension,
    series_solve,
    steklov_value,
)
from magsteklov.engines.radial import seed_radius
from magsteklov.models import RadialODEParams, RiccatiConfig, SeriesConfig, Sign


def ratios(profile):
    coeffs = profile.normalized_coefficients()
    return coeffs / coeffs[0]


# --- Series recursion ---

def test_zero_field_profile_is_constant():
    """Without a field the regular solution is Q = 1."""
    profile = series_solve(RadialODEParams(c=7, a=0, b=0, k_power=3))
    assert profile.coeffs == (1.0,)
    assert profile.truncation_order == 0
    assert steklov_value(profile) == 3.0


def test_series_coefficients_of_the_central_mode():
    """For c=1, a=0 the odd coefficients vanish and c_2 = t^2/16, c_4 = t^4/1024."""
    t = 2.0
    coeffs = ratios(series_solve(RadialODEParams.disk(0, Sign.PLUS, t)))
    assert coeffs[1] == 0.0
    assert coeffs[2] == pytest.approx(t ** 2 / 16, rel=1e-14)
    assert coeffs[3] == 0.0
    assert coeffs[4] == pytest.approx(t ** 4 / 1024, rel=1e-14)


def test_series_coefficients_of_a_minus_mode():
    """k=1, minus, t=1: c_1 = -1/4, c_2 = 1/16, c_3 = -1/128."""
    coeffs = ratios(series_solve(RadialODEParams.disk(1, Sign.MINUS, 1.0)))
    assert coeffs[1] == pytest.approx(-1 / 4, rel=1e-14)
    assert coeffs[2] == pytest.approx(1 / 16, rel=1e-14)
    assert coeffs[3] == pytest.approx(-1 / 128, rel=1e-14)


@pytest.mark.parametrize("k, sign, t", [(0, "plus", 1.0), (3, "minus", 3.0), (5, "plus", 10.0), (8, "minus", 8.0)])
def test_recursion_residual(k, sign, t):
    """Every retained coefficient satisfies the three-term recursion."""
    params = RadialODEParams.disk(k, Sign(sign), t)
    coeffs = np.asarray(series_solve(params).coeffs)
    largest = np.max(np.abs(coeffs))
    for j in range(1, coeffs.size):
        previous = coeffs[j - 2] if j >= 2 else 0.0
        residual = 4 * j * (j + params.half_order) * coeffs[j] - params.a * coeffs[j - 1] - params.b * previous
        assert abs(residual) <= 1e-12 * largest


def test_profile_is_normalized_at_the_boundary():
    profile = series_solve(RadialODEParams.disk(2, Sign.MINUS, 4.0))
    assert math.fsum(profile.normalized_coefficients()) == pytest.approx(1.0, abs=1e-13)
    assert float(evaluate_profile(profile, 1.0)) == pytest.approx(1.0, abs=1e-13)


def test_large_field_series_stays_finite():
    """At t=400 the raw coefficients overflow; the stored ones are rescaled."""
    profile = series_solve(RadialODEParams.disk(1, Sign.PLUS, 400.0))
    assert max(abs(c) for c in profile.coeffs) == pytest.approx(1.0)
    assert math.isfinite(profile.scale_log)
    assert math.isfinite(steklov_value(profile))


def test_series_rejects_nonpositive_friction():
    with pytest.raises(exc.InvalidParams):
        series_solve(RadialODEParams(c=0, a=1, b=0, k_power=0))


def test_series_reports_missing_tail():
    with pytest.raises(exc.NonConvergence):
        series_solve(RadialODEParams.disk(0, Sign.PLUS, 10.0), config=SeriesConfig(max_terms=2))


def test_series_reports_degenerate_normalization():
    """Coefficients 1, -1/4, 1/16, ... sum to about 0.8 of their maximum."""
    with pytest.raises(exc.DegenerateNormalization):
        series_solve(RadialODEParams.disk(1, Sign.MINUS, 1.0), config=SeriesConfig(min_normalization_ratio=0.99))


# --- Steklov values ---

@pytest.mark.parametrize("k", range(6))
def test_zero_field_gives_classical_values(k):
    assert steklov_value(series_solve(RadialODEParams.disk(k, Sign.PLUS, 0.0))) == pytest.approx(k, abs=1e-12)


def test_small_field_central_mode():
    """sigma = t^2/4 (1 + O(t^2)) for the k=0 mode."""
    t = 0.1
    sigma = steklov_value(series_solve(RadialODEParams.disk(0, Sign.PLUS, t)))
    assert abs(sigma - t ** 2 / 4) < t ** 4


def test_evaluate_profile_matches_direct_summation():
    """k=0, t=1, r=0.5 against a hand-rolled partial sum."""
    t, r = 1.0, 0.5
    coeffs = [1.0, 0.0]
    for j in range(2, 40):
        coeffs.append(t * t * coeffs[j - 2] / (4 * j * j))
    expected = sum(c * r ** (2 * j) for j, c in enumerate(coeffs)) / sum(coeffs)
    profile = series_solve(RadialODEParams.disk(0, Sign.PLUS, t))
    assert float(evaluate_profile(profile, r)) == pytest.approx(expected, rel=1e-14)


def test_evaluate_profile_without_field():
    """Q = 1, so the extension is r^k."""
    profile = series_solve(RadialODEParams.disk(2, Sign.PLUS, 0.0))
    assert float(evaluate_profile(profile, 0.5)) == pytest.approx(0.25)
    assert evaluate_profile(profile, np.array([0.0, 1.0])).tolist() == pytest.approx([0.0, 1.0])


# --- Riccati path ---

def test_riccati_without_field():
    assert log_derivative_solve(RadialODEParams.disk(3, Sign.PLUS, 0.0)) == pytest.approx(3.0, abs=1e-12)


@pytest.mark.parametrize("k, sign, t", [(0, "plus", 1.0), (1, "minus", 1.0), (4, "plus", 5.0), (6, "minus", 10.0)])
def test_riccati_matches_series(k, sign, t):
    params = RadialODEParams.disk(k, Sign(sign), t)
    assert log_derivative_solve(params) == pytest.approx(steklov_value(series_solve(params)), abs=1e-7)


def test_riccati_matches_series_at_large_field():
    params = RadialODEParams.disk(1, Sign.PLUS, 400.0)
    assert log_derivative_solve(params) == pytest.approx(steklov_value(series_solve(params)), abs=1e-6)


@pytest.mark.parametrize("t", [0.1, 1.0, 10.0, 100.0])
@pytest.mark.parametrize("sign", ["plus", "minus"])
@pytest.mark.parametrize("k", range(11))
def test_series_and_riccati_agree_on_the_grid(k, sign, t):
    """Modes where either path declares a pole or a degenerate Q(1) are skipped."""
    params = RadialODEParams.disk(k, Sign(sign), t)
    try:
        series = steklov_value(series_solve(params))
        riccati = log_derivative_solve(params)
    except (exc.RiccatiPole, exc.DegenerateNormalization) as error:
        pytest.skip(f"{type(error).__name__} for k={k}, {sign}, t={t}")
    assert riccati == pytest.approx(series, abs=1e-6)


def test_riccati_batch_matches_single_modes():
    modes = [RadialODEParams.disk(k, sign, 3.0) for k in range(1, 5) for sign in Sign]
    batch = log_derivative_solve_batch(modes)
    assert batch == pytest.approx([log_derivative_solve(p) for p in modes], abs=1e-8)
    assert log_derivative_solve_batch([]) == []


def test_riccati_reports_a_zero_of_q():
    """Q = J0(10 r) vanishes inside the disk, so u = Q'/Q blows up."""
    with pytest.raises(exc.NumericalError):
        log_derivative_solve(RadialODEParams(c=1, a=-100, b=0, k_power=0))


def test_seed_radius_shrinks_with_field():
    config = RiccatiConfig()
    assert seed_radius(RadialODEParams.disk(0, Sign.PLUS, 0.0), config) == config.max_seed_radius
    assert seed_radius(RadialODEParams.disk(1, Sign.PLUS, 400.0), config) < 1e-2


# --- Extensions ---

@pytest.mark.parametrize("k, sign, t", [(0, "plus", 2.0), (2, "minus", 3.0), (5, "plus", 6.0)])
def test_riccati_extension_matches_series_extension(k, sign, t):
    params = RadialODEParams.disk(k, Sign(sign), t)
    radii = np.linspace(0.0, 1.0, 41)
    assert log_derivative_extension(params)(radii) == pytest.approx(series_extension(params)(radii), abs=1e-7)


def test_extension_is_one_on_the_boundary():
    params = RadialODEParams.disk(3, Sign.MINUS, 2.0)
    assert float(log_derivative_extension(params)(1.0)) == pytest.approx(1.0, abs=1e-12)
    assert float(series_extension(params)(1.0)) == pytest.approx(1.0, abs=1e-12)
