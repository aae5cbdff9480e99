import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from secrecysim.errors import ConfigError, DomainError
from secrecysim.propagation import (
    DB_PER_NEPER,
    PATH_LOSS_EXPONENT_RANGES,
    SPEED_OF_LIGHT,
    PropagationParams,
    ShadowSample,
    draw_shadowing,
    export_presets_csv,
    free_space_path_loss,
    free_space_reference_gain_db,
    log_distance_received_power,
    received_power_shadowed,
    reference_gain_db,
    shadowing_linear_mean,
    shadowing_linear_mean_db,
    validate_exponent,
)
from secrecysim.units import RandomStream


def params(**kw):
    kw.setdefault("frequency_hz", 28e9)
    return PropagationParams(**kw)


def test_wavelength():
    p = params()
    assert abs(p.wavelength - SPEED_OF_LIGHT / 28e9) / p.wavelength < 1e-9


def test_free_space_zero_at_lambda_over_4pi():
    p = params()
    assert free_space_path_loss(p, p.wavelength / (4 * math.pi)) == pytest.approx(0.0, abs=1e-12)


def test_free_space_doubling():
    p = params()
    for r in (1.0, 7.3, 250.0):
        diff = free_space_path_loss(p, 2 * r) - free_space_path_loss(p, r)
        assert abs(diff - 20 * math.log10(2)) < 1e-9


def test_free_space_2_4ghz_100m():
    p = params(frequency_hz=2.4e9)
    oracle = 20 * math.log10(4 * math.pi * 100 * 2.4e9 / 299_792_458.0)
    assert free_space_path_loss(p, 100.0) == pytest.approx(oracle, abs=1e-9)
    assert free_space_path_loss(p, 100.0) == pytest.approx(80.05, abs=0.01)


def test_log_distance_examples():
    p = params(path_loss_exponent=2.0, reference_distance=1.0)
    assert log_distance_received_power(10.0, p, 1.0) == pytest.approx(10.0 + p.q_db, abs=1e-12)
    assert log_distance_received_power(10.0, p, 10.0) == pytest.approx(10.0 + p.q_db - 20.0, abs=1e-12)
    p = params(path_loss_exponent=3.7, reference_distance=2.0, scenario_class="urban_macrocell")
    assert log_distance_received_power(0.0, p, 200.0) == pytest.approx(p.q_db - 74.0, abs=1e-12)


def test_inside_reference_distance_rejected():
    with pytest.raises(DomainError):
        log_distance_received_power(0.0, params(reference_distance=5.0), 4.9)


def test_q_default_matches_formula():
    p = params(reference_distance=3.0)
    assert abs(p.q_db - 20 * math.log10(p.wavelength / 3.0)) < 1e-12
    assert reference_gain_db(p.wavelength, 3.0) == p.q_db


def test_free_space_special_case():
    # with the Friis constant at r0 the log-distance model at psi=2 is Friis
    for r0 in (0.5, 1.0, 10.0):
        base = params(reference_distance=r0)
        q = free_space_reference_gain_db(base.wavelength, r0)
        p = params(reference_distance=r0, q_db=q)
        for r in (r0, 3 * r0, 1000.0):
            assert abs(log_distance_received_power(0.0, p, r) + free_space_path_loss(p, r)) < 1e-9
        # the bare lambda/r0 constant differs by the 4 pi aperture factor only
        assert base.q_db - q == pytest.approx(20 * math.log10(4 * math.pi), abs=1e-12)


def test_presets_enforced():
    validate_exponent("home", 3.0)
    with pytest.raises(ConfigError, match="home"):
        validate_exponent("home", 9.9)
    with pytest.raises(ConfigError, match="preset"):
        params(scenario_class="store", path_loss_exponent=2.5)
    with pytest.raises(ConfigError):
        validate_exponent("moon_base", 2.0)


def test_presets_export(tmp_path):
    out = tmp_path / "presets.csv"
    export_presets_csv(out)
    rows = list(csv.DictReader(out.open()))
    assert {r["scenario"] for r in rows} == set(PATH_LOSS_EXPONENT_RANGES)
    home = next(r for r in rows if r["scenario"] == "home")
    assert float(home["psi_min"]) == float(home["psi_max"]) == 3.0
    buf = io.StringIO()
    export_presets_csv(buf)
    assert buf.getvalue() == out.read_text()


def test_shadowing_degenerate():
    p = params(shadow_mean_db=4.0)
    assert draw_shadowing(p, RandomStream(1)).phi_db == 4.0


def test_shadowing_std():
    p = params(shadow_std_db=8.0)
    phi = draw_shadowing(p, RandomStream(2), 100_000).phi_db
    assert abs(phi.std(ddof=1) - 8.0) < 0.1


def test_shadowing_linear_mean():
    p = params(shadow_mean_db=0.0, shadow_std_db=8.0)
    assert shadowing_linear_mean_db(p) == pytest.approx(64 / (2 * DB_PER_NEPER), abs=1e-12)
    assert shadowing_linear_mean_db(p) == pytest.approx(7.37, abs=0.01)
    # in nepers the same mean is sigma^2 / (2 Delta^2)
    assert math.log(shadowing_linear_mean(p)) == pytest.approx(64 / (2 * DB_PER_NEPER**2), rel=1e-12)
    assert math.log(shadowing_linear_mean(p)) == pytest.approx(1.697, abs=1e-3)
    lin = 10 ** (draw_shadowing(p, RandomStream(3), 1_000_000).phi_db / 10)
    mean, se = lin.mean(), lin.std(ddof=1) / math.sqrt(lin.size)
    assert abs(mean - shadowing_linear_mean(p)) < 3 * se


@given(st.floats(-20, 20), st.floats(0, 12))
def test_shadowing_mean_db_consistent(mu, sigma):
    p = params(shadow_mean_db=mu, shadow_std_db=sigma)
    assert shadowing_linear_mean_db(p) == pytest.approx(10 * math.log10(shadowing_linear_mean(p)), abs=1e-9)


def test_shadowed_power():
    p = params(path_loss_exponent=3.0)
    base = log_distance_received_power(20.0, p, 50.0)
    assert received_power_shadowed(20.0, p, 50.0, ShadowSample(0.0)) == base
    assert received_power_shadowed(20.0, p, 50.0, ShadowSample(5.0)) == pytest.approx(base - 5.0, abs=1e-12)


def test_full_chain_28ghz():
    p = params(path_loss_exponent=3.0, reference_distance=1.0)
    lam = 299_792_458.0 / 28e9
    q = 20 * math.log10(lam / 1.0)  # about -39.4 dB
    expected = 30.0 + q - 10 * 3.0 * math.log10(200.0) - 2.5
    assert received_power_shadowed(30.0, p, 200.0, 2.5) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(-80.93, abs=0.01)


@given(st.floats(1.0, 1e4), st.floats(1.001, 10.0), st.floats(1.0, 6.0))
def test_received_power_decreases_with_distance(r, factor, psi):
    p = params(path_loss_exponent=psi)
    assert log_distance_received_power(0.0, p, r * factor) < log_distance_received_power(0.0, p, r)
