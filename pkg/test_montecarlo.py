# test_montecarlo.py
import math

import numpy as np
import pytest

from src.qslink.link_tools.channel import ChannelParams, required_stimulus
from src.qslink.link_tools.core import DomainError
from src.qslink.link_tools.kinetics import KineticParams, concentration_for_probability
from src.qslink.link_tools.modulation import MarySpec, symbol_error_probs, total_error
from src.qslink.link_tools.montecarlo import (
    SimConfig,
    empirical_moments,
    empirical_symbol_error,
    simulate_link,
)
from src.qslink.link_tools.receiver import exact_receiver_variance, receiver_moments
from src.qslink.link_tools.transmitter import NodeParams

CH = ChannelParams()


def stimulus_for(p0, node, ch=CH):
    return required_stimulus(concentration_for_probability(p0, node.kinetics), node, ch)


@pytest.mark.parametrize("kwargs", [{"trials": 0}, {"seed": -1}, {"threads": 0}, {"chunk_size": 0}])
def test_sim_config_validation(kwargs):
    with pytest.raises(DomainError):
        SimConfig(**kwargs)


def test_zero_stimulus_gives_zero_output():
    node = NodeParams.from_relative(20, 0.05, 0.05)
    samples = simulate_link(0.0, node, CH, SimConfig(trials=500))
    assert np.all(samples.x == 0) and np.all(samples.y == 0)


def test_same_seed_same_samples():
    node = NodeParams.from_relative(20, 0.05, 0.05)
    a = simulate_link(100.0, node, CH, SimConfig(trials=2500, seed=7))
    b = simulate_link(100.0, node, CH, SimConfig(trials=2500, seed=7))
    c = simulate_link(100.0, node, CH, SimConfig(trials=2500, seed=8))
    np.testing.assert_array_equal(a.y, b.y)
    assert not np.array_equal(a.y, c.y)


def test_threads_do_not_change_samples():
    node = NodeParams.from_relative(20, 0.05, 0.05)
    ch = ChannelParams.from_microns(50.0, sigma_r_rel_sq=0.01)
    serial = simulate_link(100.0, node, ch, SimConfig(trials=3500, seed=3, chunk_size=500))
    parallel = simulate_link(100.0, node, ch, SimConfig(trials=3500, seed=3, chunk_size=500, threads=4))
    np.testing.assert_array_equal(serial.y, parallel.y)
    np.testing.assert_array_equal(serial.a_r, parallel.a_r)
    assert len(serial.y) == 3500


def test_degenerate_noise_is_binomial():
    node = NodeParams(n=100)
    A_s = stimulus_for(0.5, node)
    samples = simulate_link(A_s, node, CH, SimConfig(trials=20000, transmitter_noise=False))
    mean, var, _ = empirical_moments(samples.y)
    nN = node.receptors
    assert mean == pytest.approx(nN * 0.5, abs=3 * math.sqrt(nN * 0.25 / 20000) + 1e-6 * nN)
    assert var == pytest.approx(nN * 0.25, rel=0.05)
    assert samples.clamped == 0


def test_low_noise_moments_match_exact_variance():
    node = NodeParams.from_relative(100, 0.01, 0.01)
    ch = ChannelParams.from_microns(50.0, sigma_r_rel_sq=0.001)
    p0 = 0.5
    samples = simulate_link(stimulus_for(p0, node, ch), node, ch, SimConfig(trials=20000, seed=11))
    mean, var, _ = empirical_moments(samples.y)
    assert mean == pytest.approx(node.receptors * p0, rel=0.01)
    assert var == pytest.approx(exact_receiver_variance(p0, node, ch).total, rel=0.10)


@pytest.mark.parametrize("p0", [0.1, 0.3, 0.5, 0.615])
def test_default_operating_points_match_exact_moments(p0):
    node = NodeParams.from_relative(100, 0.05, 0.05)
    trials = 40000
    samples = simulate_link(stimulus_for(p0, node), node, CH, SimConfig(trials=trials, seed=3))
    mean, var, _ = empirical_moments(samples.y)
    expected_mean = node.receptors * p0
    exact = exact_receiver_variance(p0, node, CH).total
    assert abs(mean - expected_mean) <= 3.0 * math.sqrt(var / trials) + 0.01 * expected_mean
    assert abs(var - exact) <= 3.0 * var * math.sqrt(2.0 / trials) + 0.10 * exact


def test_transmitter_count_is_near_gaussian_for_large_populations():
    rng = np.random.default_rng(2024)
    for draw in range(20):
        n = int(rng.integers(20, 201))
        ps = float(rng.uniform(0.2, 0.8))
        node = NodeParams.from_relative(n, *rng.uniform(0.0, 0.05, size=2))
        assert node.receptors >= 1000
        samples = simulate_link(250.0 * ps / (1.0 - ps), node, CH, SimConfig(trials=10000, seed=draw))
        _, _, skew = empirical_moments(samples.x)
        assert abs(skew) < 0.2


def test_first_order_model_in_its_own_regime():
    # many receptors, no shared noise: the Bernoulli term is negligible
    node = NodeParams.from_relative(20, 0.01, 0.01, KineticParams(N=10000))
    p0 = 0.4
    cfg = SimConfig(trials=5000, seed=5, transmitter_noise=False)
    samples = simulate_link(stimulus_for(p0, node), node, CH, cfg)
    _, var, _ = empirical_moments(samples.y)
    assert var == pytest.approx(receiver_moments(p0, node, CH).variance, rel=0.10)


def test_transmitter_toggle_matches_predicted_term():
    node = NodeParams(n=100)
    p0 = 0.3
    A_s = stimulus_for(p0, node)
    on = simulate_link(A_s, node, CH, SimConfig(trials=20000, seed=21))
    off = simulate_link(A_s, node, CH, SimConfig(trials=20000, seed=22, transmitter_noise=False))
    predicted = exact_receiver_variance(p0, node, CH).transmitter
    observed = empirical_moments(on.y)[1] - empirical_moments(off.y)[1]
    assert observed == pytest.approx(predicted, rel=0.20)


def test_out_of_range_probabilities_are_clamped():
    node = NodeParams.from_relative(10, 4.0, 4.0)
    samples = simulate_link(200.0, node, CH, SimConfig(trials=200, seed=1))
    assert samples.clamped > 0
    assert 0.0 < samples.clamp_rate < 1.0
    assert np.all((samples.y >= 0) & (samples.y <= node.receptors))
    with pytest.raises(DomainError):
        simulate_link(200.0, node, CH, SimConfig(trials=200, seed=1, truncate_probabilities=False))


def test_non_positive_distances_are_resampled():
    node = NodeParams(n=10)
    ch = ChannelParams.from_microns(50.0, sigma_r_rel_sq=0.5)
    samples = simulate_link(50.0, node, ch, SimConfig(trials=2000, seed=2))
    assert samples.resampled > 0
    assert np.all(np.isfinite(samples.a_r)) and np.all(samples.a_r >= 0)


def test_rows():
    node = NodeParams(n=5)
    samples = simulate_link(50.0, node, CH, SimConfig(trials=3))
    rows = list(samples.rows())
    assert [r[0] for r in rows] == [0, 1, 2]
    assert rows[1][3] == samples.y[1]


def test_empirical_moments():
    assert empirical_moments([3.0, 3.0, 3.0]) == (3.0, 0.0, 0.0)
    mean, var, _ = empirical_moments([0.0, 2.0])
    assert (mean, var) == (1.0, 2.0)
    _, _, skew = empirical_moments([0.0, 0.0, 0.0, 10.0])
    assert skew > 0
    with pytest.raises(DomainError):
        empirical_moments([1.0])


def test_noiseless_symbols_decode_perfectly():
    node = NodeParams(n=100)
    spec = MarySpec(4, 0.6)
    est = empirical_symbol_error(spec, node, CH, SimConfig(trials=500, transmitter_noise=False))
    assert est.total == 0.0
    np.testing.assert_array_equal(est.per_symbol, np.zeros(4))


def test_symbol_error_matches_analytic():
    node = NodeParams.from_relative(20, 0.01, 0.01, KineticParams(N=10000))
    p_max = 10000.0 * node.kinetics.gamma / (10000.0 * node.kinetics.gamma + node.kinetics.kappa)
    spec = MarySpec(32, p_max)
    cfg = SimConfig(trials=4000, seed=9, transmitter_noise=False, distance_noise=False)
    est = empirical_symbol_error(spec, node, CH, cfg)

    stds = [
        math.sqrt(exact_receiver_variance(float(p), node, CH, include_transmitter_noise=False,
                                          include_distance_noise=False).total) / node.receptors
        for p in spec.levels
    ]
    errs = symbol_error_probs(spec, node, 0.02, stds=stds)
    analytic = total_error(spec, errs)
    se = math.sqrt(float((spec.weights ** 2 * errs * (1 - errs)).sum()) / cfg.trials)
    assert abs(est.total - analytic) <= 3 * se + 0.25 * analytic
    assert est.trials_per_symbol == 4000
