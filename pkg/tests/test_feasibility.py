import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dipoledyn.errors import DomainError
from dipoledyn.feasibility import (
    RYDBERG,
    YB_ION,
    YB_ION_TIGHT,
    PhysicalScenario,
    decay_during,
    scenario_report,
    separation,
    t_cnot_absolute,
    t_pi_absolute,
    trap_frequency,
)

positive = st.floats(min_value=1e-3, max_value=1e3)


def test_separation():
    assert separation(0.2, 10e-6) == pytest.approx(0.3183e-6, rel=1e-3)
    assert separation(0.25, 3.43e-6) == pytest.approx(0.1365e-6, rel=1e-3)
    assert separation(2.0 * math.pi, 7e-7) == pytest.approx(7e-7)


@pytest.mark.parametrize(
    "mass, r, mhz",
    [
        (100.0, 0.318e-6, 46.8),
        (171.0, separation(0.25, 3.43e-6), 127.0),
        (171.0, separation(0.2, 3.43e-6), 178.0),
    ],
)
def test_trap_frequency_reproduces_quoted_values(mass, r, mhz):
    assert trap_frequency(mass, r) / 1e6 == pytest.approx(mhz, rel=0.02)


@given(positive, positive)
def test_trap_frequency_scaling(mass, r_um):
    r = r_um * 1e-6
    assert trap_frequency(mass, r) / trap_frequency(mass, 4.0 * r) == pytest.approx(8.0, rel=1e-9)
    assert trap_frequency(mass, r) / trap_frequency(4.0 * mass, r) == pytest.approx(2.0, rel=1e-9)


@given(positive, positive)
def test_separation_is_linear(k0r, lam):
    assert separation(2.0 * k0r, lam) == pytest.approx(2.0 * separation(k0r, lam))
    assert separation(k0r, 3.0 * lam) == pytest.approx(3.0 * separation(k0r, lam))


def test_absolute_pulse_lengths():
    t_pi, seconds = t_pi_absolute(0.25, 375.0)
    assert t_pi == pytest.approx(0.0237, abs=1e-4)
    assert t_pi == pytest.approx(0.024, rel=0.02)
    assert seconds is None
    t_cnot, seconds = t_cnot_absolute(0.25, 375.0, einstein_a=1e3)
    assert t_cnot == pytest.approx(0.01676, abs=1e-5)
    assert t_cnot == pytest.approx(0.017, rel=0.03)
    assert seconds == pytest.approx(t_cnot / 1e3)


def test_decay_during():
    assert decay_during(0.0, 2.0) == 1.0
    assert decay_during(0.5, 2.0) == pytest.approx(math.exp(-1.0))
    with pytest.raises(DomainError):
        decay_during(-1.0, 2.0)


def test_rydberg_report():
    report = scenario_report(RYDBERG)
    assert report["leading_shift"] == pytest.approx(375.0)
    assert report["abs_imc_small_r"] == pytest.approx(382.4, abs=0.1)
    assert report["trap_frequency_mhz"] == pytest.approx(46.8, rel=0.02)
    assert report["r_um"] == pytest.approx(0.3183, abs=1e-4)
    assert report["gamma_s"] + report["gamma_a"] == pytest.approx(2.0)
    assert "t_pi_s" not in report


def test_yb_reports():
    assert scenario_report(YB_ION)["trap_frequency_mhz"] == pytest.approx(127.0, rel=0.02)
    assert scenario_report(YB_ION_TIGHT)["trap_frequency_mhz"] == pytest.approx(178.0, rel=0.02)


def test_report_with_einstein_coefficient():
    s = PhysicalScenario(lambda0=10e-6, k0r=0.1, mass_amu=100.0, einstein_a=1e4)
    report = scenario_report(s)
    assert report["leading_shift"] == pytest.approx(3000.0)
    assert report["t_pi_s"] == pytest.approx(report["t_pi_over_a"] / 1e4)
    assert report["no_photon_during_t_pi"] > scenario_report(RYDBERG)["no_photon_during_t_pi"]


@pytest.mark.parametrize(
    "kwargs",
    [
        {"lambda0": 0.0, "k0r": 0.2, "mass_amu": 100.0},
        {"lambda0": 1e-6, "k0r": 1.5, "mass_amu": 100.0},
        {"lambda0": 1e-6, "k0r": 0.2, "mass_amu": -1.0},
        {"lambda0": 1e-6, "k0r": 0.2, "mass_amu": 100.0, "einstein_a": 0.0},
        {"lambda0": 1e-6, "k0r": 0.2, "mass_amu": 100.0, "theta": 3.5},
    ],
)
def test_scenario_validation(kwargs):
    with pytest.raises(DomainError):
        PhysicalScenario(**kwargs)


def test_scenario_accepts_dipoles_along_the_axis():
    s = PhysicalScenario(lambda0=10e-6, k0r=0.2, mass_amu=100.0, theta=0.0)
    assert scenario_report(s)["theta"] == 0.0
