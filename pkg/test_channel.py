# test_channel.py
import logging
import math

import numpy as np
import pytest
from scipy import integrate

from src.qslink.link_tools.channel import (
    ChannelParams,
    arrival_fraction,
    channel_table,
    cm_to_um,
    green_impulse,
    pulse_convolution,
    receiver_concentration_stats,
    required_stimulus,
    saturation_concentration,
    steady_concentration,
    step_response,
    um_to_cm,
)
from src.qslink.link_tools.core import DomainError, SaturationError
from src.qslink.link_tools.transmitter import NodeParams

CH = ChannelParams()
NODE = NodeParams.from_relative(100, 0.05, 0.05)


def test_units():
    assert um_to_cm(50.0) == pytest.approx(5e-3)
    assert cm_to_um(um_to_cm(12.5)) == pytest.approx(12.5)
    assert CH.r0 == pytest.approx(5e-3)
    assert CH.diffusion_time == pytest.approx(0.625)


@pytest.mark.parametrize("kwargs", [{"D": 0.0}, {"r0": 0.0}, {"sigma_r_sq": -1.0}, {"t0": 0.0}])
def test_channel_validation(kwargs):
    with pytest.raises(DomainError):
        ChannelParams(**kwargs)


def test_large_distance_noise_warns(caplog):
    with caplog.at_level(logging.WARNING, logger="qslink.channel"):
        ch = ChannelParams.from_microns(50.0, sigma_r_rel_sq=0.5)
    assert ch.sigma_r_rel_sq == pytest.approx(0.5)
    assert "[CHANNEL]" in caplog.text


def test_distance_noise_at_the_limit_warns(caplog):
    with caplog.at_level(logging.WARNING, logger="qslink.channel"):
        ChannelParams.from_microns(50.0, sigma_r_rel_sq=0.25)
    assert "[CHANNEL]" in caplog.text


def test_green_impulse_unit_normalisation():
    t = 1.0 / (4.0 * math.pi * CH.D)
    assert green_impulse(0.0, t, CH) == pytest.approx(1.0)
    assert green_impulse(1.0, 1e-3, CH) == 0.0


def test_green_impulse_conserves_mass():
    t = 30.0
    upper = 20.0 * math.sqrt(CH.D * t)
    mass, _ = integrate.quad(lambda r: 4.0 * math.pi * r * r * green_impulse(r, t, CH), 0.0, upper)
    assert mass == pytest.approx(1.0, abs=1e-6)


def test_steady_concentration():
    assert steady_concentration(0.0, CH.r0, CH) == 0.0
    beta = 4.0 * math.pi * CH.D * CH.r0
    assert steady_concentration(beta, CH.r0, CH) == pytest.approx(1.0)


def test_step_response_constant_source():
    level = steady_concentration(1.0, CH.r0, CH)
    assert step_response(CH.r0, 0.0, 1.0, CH) == 0.0
    assert step_response(CH.r0, 1e9, 1.0, CH) == pytest.approx(level, rel=1e-4)
    assert step_response(CH.r0, 79.1, 1.0, CH) / level == pytest.approx(0.9, rel=5e-3)
    with pytest.raises(DomainError):
        step_response(0.0, 1.0, 1.0, CH)


def test_step_response_finite_pulse_decays():
    ch = ChannelParams(t0=300.0)
    assert step_response(ch.r0, 1e9, 1.0, ch) == pytest.approx(0.0, abs=1e-6)


@pytest.mark.parametrize("t", [5.0, 150.0, 310.0, 600.0])
def test_pulse_convolution_matches_closed_form(t):
    ch = ChannelParams(t0=300.0)
    assert pulse_convolution(ch.r0, t, 2.0, ch) == pytest.approx(step_response(ch.r0, t, 2.0, ch), rel=1e-6)


def test_arrival_fraction_limits():
    assert arrival_fraction(CH.r0, 0.0, CH) == 0.0
    assert arrival_fraction(CH.r0, math.inf, CH) == 1.0


def test_saturation_and_required_stimulus():
    a_sat = saturation_concentration(NODE, CH)
    assert a_sat == pytest.approx(7957.747, rel=1e-6)
    assert required_stimulus(0.0, NODE, CH) == 0.0
    assert required_stimulus(a_sat / 2, NODE, CH) == pytest.approx(250.0)
    with pytest.raises(SaturationError):
        required_stimulus(a_sat, NODE, CH)


def test_required_stimulus_inverts_stats():
    a_sat = saturation_concentration(NODE, CH)
    for A_0 in np.random.default_rng(11).uniform(0.0, 0.99 * a_sat, size=100):
        A_s = required_stimulus(A_0, NODE, CH)
        assert receiver_concentration_stats(A_s, NODE, CH).mean == pytest.approx(A_0, rel=1e-10)


def test_receiver_concentration_stats():
    stats = receiver_concentration_stats(250.0, NODE, CH)
    assert stats.sigma_t_sq == pytest.approx(2.5e-4)
    assert stats.sigma_r_rel_sq == 0.0
    assert receiver_concentration_stats(0.0, NODE, CH).mean == 0.0
    assert receiver_concentration_stats(math.inf, NODE, CH).sigma_t_sq == 0.0


def test_channel_table_columns():
    ch = ChannelParams(t0=300.0)
    rows = channel_table(ch.r0, 1.0, ch, t_end=600.0, steps=6)
    assert len(rows) == 7
    for t, ratio, constant, pulse in rows:
        assert 0.0 <= ratio <= 1.0
        assert constant == pytest.approx(ratio * steady_concentration(1.0, ch.r0, ch))
        if t <= 300.0:
            assert pulse == pytest.approx(constant)
        else:
            assert pulse < constant


def test_step_response_matches_green_quadrature():
    r = CH.r0
    for t in np.linspace(1.0, 600.0, 100):
        numeric, _ = integrate.quad(lambda tau: green_impulse(r, tau, CH), 0.0, t, epsabs=0.0, epsrel=1e-10, limit=200)
        assert step_response(r, t, 1.0, CH) == pytest.approx(numeric, rel=1e-4)
