# test_link.py
import logging

import pytest

from src.qslink.__main__ import EXIT_CONFIG, EXIT_OK, main
from src.qslink.link import Link, samples_table
from src.qslink.link_config import ENV_OVERRIDES, LinkConfig

SMALL = """
[node]
sigma_gamma_rel_sq = 0.01
sigma_kappa_rel_sq = 0.01

[capacity]
k_in = 61
k_out = 601
amax_grid_nm = 100, 400
n_sweep = 50, 100
sigma0_sweep = 0.05, 0.2

[timing]
distance_grid_um = 10, 50, 100
n_sweep = 50, 100, 200

[modulation]
m_list = 2, 4
amax_grid_nm = 100, 400
k_out = 201

[montecarlo]
trials = 2000
symbol_trials = 500
chunk_size = 500
validate_p0 = 0.3
symbol_m = 2
"""


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ENV_OVERRIDES:
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def ini(tmp_path):
    path = tmp_path / "link.ini"
    path.write_text(SMALL, encoding="utf-8")
    return str(path)


@pytest.fixture
def link(ini):
    return Link(LinkConfig.load(ini))


def test_capacity_table(link):
    table = link.run_capacity()
    assert table.schema == "capacity/1"
    assert len(table.rows) == 4
    assert table.column("n") == [50, 50, 100, 100]
    caps = table.column("capacity_bits")
    assert caps[0] < caps[1] and caps[2] < caps[3]
    assert caps[1] < caps[3]


def test_capacity_sigma0_sweep(link):
    table = link.run_capacity(sigma0_sweep=True)
    assert table.column("sigma0_sq") == [0.05, 0.05, 0.2, 0.2]
    by_key = {(r[1], r[2]): r[4] for r in table.rows}
    assert by_key[(0.05, 400.0)] > by_key[(0.2, 400.0)]


def test_timing_table(link):
    table = link.run_timing()
    assert len(table.rows) == 9
    assert table.column("r_um") == [10.0] * 3 + [50.0] * 3 + [100.0] * 3
    rates = {(r[0], r[1]): r[-1] for r in table.rows}
    for n in (50, 100, 200):
        assert rates[(10.0, n)] > rates[(50.0, n)] > rates[(100.0, n)]
    for r in (10.0, 50.0, 100.0):
        assert rates[(r, 50)] < rates[(r, 100)] < rates[(r, 200)]


def test_timing_threshold_override(link):
    default = link.run_timing()
    looser = link.run_timing(rise_threshold=0.5)
    assert looser.column("t_rise_s")[0] < default.column("t_rise_s")[0]


def test_modulation_table(link):
    table = link.run_modulation()
    assert table.column("m") == [2, 2, 4, 4]
    per_symbol = table.column("per_symbol_error")
    assert [len(p) for p in per_symbol] == [2, 2, 4, 4]
    errs = table.column("total_error")
    assert errs[3] <= errs[2]


def test_kinetics_and_channel_dumps(link):
    kin = link.run_kinetics()
    assert kin.schema == "kinetics/1"
    assert kin.rows[0][1:4] == [0.0, 0.0, 0.0]
    assert 0.0 < kin.column("s2_fraction")[-1] <= 1.0
    ch = link.run_channel()
    assert ch.schema == "channel/1"
    assert ch.rows[-1][3] < ch.rows[-1][2]


def test_validate_passes_in_low_noise(link):
    table = link.run_validate()
    status = dict(((r[0], r[1]), r[-1]) for r in table.rows)
    assert status[("mean", 0.3)] == "pass"
    assert status[("variance_exact", 0.3)] == "pass"
    assert status[("transmitter_ratio", 0.3)] == "pass"
    assert status[("symbol_error", 2)] == "pass"
    assert "fail" not in table.column("status")


def test_validate_is_deterministic(link):
    a = link.run_validate(trials=1000)
    b = link.run_validate(trials=1000)
    assert a.rows == b.rows


def test_validate_underpowered(link):
    table = link.run_validate(trials=10)
    status = dict(((r[0], r[1]), r[-1]) for r in table.rows)
    assert status[("mean", 0.3)] == "underpowered"
    assert status[("symbol_error", 2)] == "underpowered"


def test_validate_flags_first_order_regime(ini):
    cfg = LinkConfig.load(ini, overrides={("node", "sigma_gamma_rel_sq"): 0.3, ("node", "sigma_kappa_rel_sq"): 0.3})
    table = Link(cfg).run_validate(trials=10)
    assert table.rows[0][0] == "first_order_regime"
    assert table.rows[0][-1] == "warn"


def test_validate_flags_noise_at_the_first_order_limit(ini):
    cfg = LinkConfig.load(ini, overrides={("node", "sigma_gamma_rel_sq"): 0.25, ("node", "sigma_kappa_rel_sq"): 0.25})
    table = Link(cfg).run_validate(trials=10)
    assert table.rows[0][0] == "first_order_regime"


def test_validate_small_population_reaches_every_default_point(ini):
    cfg = LinkConfig.load(ini, overrides={("node", "n"): 50, ("montecarlo", "validate_p0"): "0.1, 0.3, 0.5, 0.615",
                                          ("montecarlo", "symbol_m"): "8"})
    table = Link(cfg).run_validate(trials=10)
    assert "unreachable" not in table.column("check")
    means = [r[1] for r in table.rows if r[0] == "mean"]
    assert means == [0.1, 0.3, 0.5, 0.615]
    assert ("symbol_error", 8) in [(r[0], r[1]) for r in table.rows]


def test_validate_skips_points_beyond_saturation(ini, caplog):
    cfg = LinkConfig.load(ini, overrides={("node", "n"): 50, ("montecarlo", "validate_p0"): "0.3, 0.99",
                                          ("montecarlo", "symbol_a_max_nm"): 30000.0})
    with caplog.at_level(logging.WARNING, logger="qslink.link"):
        table = Link(cfg).run_validate(trials=10)
    unreachable = [r for r in table.rows if r[0] == "unreachable"]
    assert [r[1] for r in unreachable] == [0.99, pytest.approx(30000.0 / 30250.0)]
    assert all(r[-1] == "warn" for r in unreachable)
    assert [r[1] for r in table.rows if r[0] == "mean"] == [0.3]
    assert "symbol_error" not in table.column("check")
    assert "above saturation" in caplog.text


def test_bits_per_hour_at_default_physics():
    cfg = LinkConfig.load(overrides={("capacity", "k_in"): 61, ("capacity", "k_out"): 1001})
    table = Link(cfg).run_timing()
    assert len(table.rows) == 9
    rates = {(r[0], r[1]): r[-1] for r in table.rows}
    for r_um in (10.0, 50.0, 100.0):
        assert rates[(r_um, 50)] < rates[(r_um, 100)] < rates[(r_um, 200)]
    for n in (50, 100, 200):
        assert rates[(10.0, n)] > rates[(50.0, n)] > rates[(100.0, n)]
    # published values span 1.2 to 2.1 bits per hour
    assert all(0.6 <= v <= 4.2 for v in rates.values())


def test_samples_table(link):
    collected = []
    link.run_validate(trials=20, samples_out=collected)
    table = samples_table(collected)
    assert table.schema == "samples/1"
    assert len(table.rows) == 20
    assert table.column("trial") == list(range(20))


def test_cli_capacity_is_reproducible(ini, tmp_path):
    out = tmp_path / "cap.csv"
    assert main(["capacity", "--config", ini, "--out", str(out), "--no-timestamp"]) == EXIT_OK
    first = out.read_text(encoding="utf-8")
    assert first.startswith("schema,n,sigma0_sq,a_max_nM,p_max,capacity_bits,iterations,gap_bits\n")
    assert main(["capacity", "--config", ini, "--out", str(out), "--no-timestamp"]) == EXIT_OK
    assert out.read_text(encoding="utf-8") == first


@pytest.mark.parametrize("command", [["capacity"], ["modulation"], ["validate", "--trials", "2000"]])
def test_cli_output_does_not_depend_on_threads(ini, tmp_path, command):
    outputs = []
    for threads in ("1", "4"):
        out = tmp_path / f"out_{threads}.csv"
        assert main(command + ["--config", ini, "--out", str(out), "--no-timestamp",
                               "--threads", threads]) == EXIT_OK
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_cli_timestamp_line(ini, tmp_path):
    out = tmp_path / "kin.csv"
    assert main(["kinetics", "--config", ini, "--out", str(out)]) == EXIT_OK
    assert out.read_text(encoding="utf-8").startswith("# generated ")


def test_cli_bad_key_exits_2(tmp_path, caplog):
    path = tmp_path / "bad.ini"
    path.write_text("[capacity]\nk_inn = 5\n", encoding="utf-8")
    assert main(["capacity", "--config", str(path)]) == EXIT_CONFIG
    assert "k_inn" in caplog.text


def test_cli_validate_underpowered_exits_0(ini, tmp_path):
    out = tmp_path / "validate.csv"
    samples = tmp_path / "samples.csv"
    code = main(["validate", "--config", ini, "--out", str(out), "--trials", "10", "--seed", "5",
                 "--samples", str(samples), "--jsonl"])
    assert code == EXIT_OK
    assert "underpowered" in out.read_text(encoding="utf-8")
    assert samples.read_text(encoding="utf-8").count("samples/1") == 10
    assert out.with_suffix(".jsonl").exists()


def test_cli_rejects_bad_threshold(ini):
    assert main(["timing", "--config", ini, "--rise-threshold", "1.2"]) == EXIT_CONFIG
