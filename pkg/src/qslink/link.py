# src/qslink/link.py
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Dict, Iterable, List, Optional, Tuple

from .link_config import LinkConfig
from .link_tools.capacity import capacity_vs_amax, capacity_vs_sigma0, p_max_from_amax
from .link_tools.channel import (
    ChannelConfig,
    ChannelParams,
    channel_table,
    required_stimulus,
    saturation_concentration,
    um_to_cm,
)
from .link_tools.core import reaches
from .link_tools.kinetics import (
    KineticsConfig,
    concentration_for_probability,
    gfp_steady,
    steady_binding_probability,
    transient_table,
)
from .link_tools.modulation import MarySpec, error_vs_amax, symbol_error_probs, total_error
from .link_tools.montecarlo import (
    LinkSamples,
    MonteCarloConfig,
    SimConfig,
    empirical_moments,
    empirical_symbol_error,
    simulate_link,
)
from .link_tools.receiver import exact_receiver_variance, receiver_moments, sigma0_sq
from .link_tools.timing import bits_per_hour, link_delays
from .link_tools.transmitter import FIRST_ORDER_LIMIT, output_rate_stats, relative_output_variance
from .report import Table

log = logging.getLogger("qslink.link")

PASS, FAIL, UNDERPOWERED, WARN, INFO = "pass", "fail", "underpowered", "warn", "info"


class Link:
    """Runs the experiments of one LinkConfig and returns their tables."""

    def __init__(self, config: Optional[LinkConfig] = None):
        self.config = config or LinkConfig.load()
        self.kinetics = self.config.kinetics()
        self.node = self.config.node()
        self.channel = self.config.channel()
        self.sigma0_sq = sigma0_sq(self.node, self.channel)
        self.tolerance = self.config.tolerance()
        self.threads = self.config.threads
        log.info("[LINK] n=%d N=%d sigma0^2=%.4g r0=%.4g cm, %d thread(s)",
                 self.node.n, self.node.N, self.sigma0_sq, self.channel.r0, self.threads)

    def _capacity_settings(self):
        c = self.config
        return c.get("capacity", "k_in"), c.get("capacity", "k_out")

    # ---------------- capacity ----------------
    def run_capacity(self, sigma0_sweep: bool = False) -> Table:
        table = Table("capacity/1", ["n", "sigma0_sq", "a_max_nM", "p_max", "capacity_bits", "iterations", "gap_bits"])
        K_in, K_out = self._capacity_settings()
        grid = self.config.get("capacity", "amax_grid_nm")
        points = []
        if sigma0_sweep:
            for a in grid:
                points += capacity_vs_sigma0(self.config.get("capacity", "sigma0_sweep"), a, self.node,
                                             K_in, K_out, self.tolerance, self.threads)
        else:
            for n in self.config.get("capacity", "n_sweep"):
                points += capacity_vs_amax(grid, self.config.node(n), self.sigma0_sq,
                                           K_in, K_out, self.tolerance, self.threads)
        for p in points:
            table.add(p.n, p.sigma0_sq, p.a_max, p.p_max, p.capacity_bits, p.iterations, p.gap_bits)
        return table.sort("n", "sigma0_sq", "a_max_nM")

    # ---------------- timing ----------------
    def run_timing(self, rise_threshold: Optional[float] = None, fall_threshold: Optional[float] = None) -> Table:
        c = self.config
        rise = c.get("timing", "rise_threshold") if rise_threshold is None else rise_threshold
        fall = c.get("timing", "fall_threshold") if fall_threshold is None else fall_threshold
        table = Table("timing/1", ["r_um", "n", "capacity_bits", "t_rise_s", "t_reception_min",
                                   "t_fall_s", "t_total_hr", "bits_per_hour"])
        K_in, K_out = self._capacity_settings()
        a_max = c.get("timing", "a_max_nm")

        capacity: Dict[int, float] = {}
        for n in c.get("timing", "n_sweep"):
            point = capacity_vs_amax([a_max], c.node(n), self.sigma0_sq, K_in, K_out, self.tolerance)[0]
            capacity[n] = point.capacity_bits

        for r_um in c.get("timing", "distance_grid_um"):
            delays = link_delays(um_to_cm(r_um), c.channel(r_um), self.kinetics, rise, fall,
                                 c.get("timing", "reception_concentration_nm"))
            for n, bits in capacity.items():
                table.add(r_um, n, bits, delays.t_rise, delays.t_reception, delays.t_fall,
                          delays.t_total_hours, bits_per_hour(bits, delays))
        return table.sort("r_um", "n")

    # ---------------- modulation ----------------
    def run_modulation(self) -> Table:
        c = self.config
        table = Table("modulation/1", ["m", "a_max_nM", "p_max", "rate_bits", "log2m", "total_error",
                                       "per_symbol_error"])
        for m in c.get("modulation", "m_list"):
            points = error_vs_amax(m, c.get("modulation", "amax_grid_nm"), self.node, self.sigma0_sq,
                                   c.get("modulation", "k_out"), self.tolerance,
                                   c.get("modulation", "one_sided_endpoints"), self.threads)
            for p in points:
                r = p.result
                table.add(m, p.a_max, p.p_max, r.rate_bits, r.log2m, r.total_error,
                          [float(e) for e in r.per_symbol_error])
        return table.sort("m", "a_max_nM")

    # ---------------- kinetics / channel dumps ----------------
    def run_kinetics(self) -> Table:
        cfg = KineticsConfig()
        A = self.config.get("timing", "reception_concentration_nm")
        table = Table("kinetics/1", ["t_min", "p", "s1", "s2", "s2_fraction"])
        steady = gfp_steady(steady_binding_probability(A, self.kinetics), self.kinetics)
        for t, p, s1, s2 in transient_table(A, self.kinetics, cfg.DUMP_T_END_MIN, cfg.DUMP_STEPS):
            table.add(t, p, s1, s2, s2 / steady)
        return table

    def run_channel(self) -> Table:
        cfg = ChannelConfig()
        ch = self.channel
        if math.isinf(ch.t0):
            ch = ChannelParams(D=ch.D, r0=ch.r0, sigma_r_sq=ch.sigma_r_sq, t0=cfg.DUMP_PULSE_S)
        beta, _ = output_rate_stats(cfg.DUMP_STIMULUS_NM, self.node)
        table = Table("channel/1", ["t_s", "rise_ratio", "constant_nM", "pulse_nM"])
        for row in channel_table(ch.r0, beta, ch):
            table.add(*row)
        return table

    # ---------------- validation ----------------
    def _operating_point(self, p0: float) -> float:
        """Transmitter stimulus A_s that puts the receiver at p0."""
        return required_stimulus(concentration_for_probability(p0, self.kinetics), self.node, self.channel)

    def simulate(self, p0: float, trials: Optional[int] = None) -> LinkSamples:
        return simulate_link(self._operating_point(p0), self.node, self.channel, self.config.sim_config(trials))

    def run_validate(self, trials: Optional[int] = None,
                     samples_out: Optional[List[Tuple[float, LinkSamples]]] = None) -> Table:
        mc = MonteCarloConfig()
        c = self.config
        sim = c.sim_config(trials)
        powered = sim.trials >= mc.MIN_POWERED_TRIALS
        table = Table("validate/1", ["check", "param", "analytic", "empirical", "tolerance", "status"])

        def stat_status(ok: bool) -> str:
            if not powered:
                return UNDERPOWERED
            return PASS if ok else FAIL

        if not self.node.first_order_ok or reaches(self.channel.sigma_r_rel_sq, ChannelConfig().DISTANCE_REL_LIMIT):
            log.warning("[LINK] parameter noise is outside the first-order regime; the analytic variance is only indicative")
            table.add("first_order_regime", self.node.relative_noise, self.channel.sigma_r_rel_sq,
                      math.nan, FIRST_ORDER_LIMIT, WARN)

        n_total = self.node.receptors
        p0_list = []
        for p0 in c.get("montecarlo", "validate_p0"):
            if self._reachable(p0, table):
                p0_list.append(p0)

        def run_point(p0):
            return p0, self.simulate(p0, sim.trials)

        if self.threads > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                results = list(pool.map(run_point, p0_list))
        else:
            results = [run_point(p0) for p0 in p0_list]

        for p0, samples in results:
            if samples_out is not None:
                samples_out.append((p0, samples))
            mean, var, skew = empirical_moments(samples.y)
            exact = exact_receiver_variance(p0, self.node, self.channel).total
            approx = receiver_moments(p0, self.node, self.channel).variance
            analytic_mean = n_total * p0

            se_mean = math.sqrt(var / sim.trials)
            tol_mean = 3.0 * se_mean + mc.MEAN_REL_TOL * analytic_mean
            table.add("mean", p0, analytic_mean, mean, tol_mean, stat_status(abs(mean - analytic_mean) <= tol_mean))

            se_var = var * math.sqrt(2.0 / max(sim.trials - 1, 1))
            tol_var = 3.0 * se_var + mc.VARIANCE_REL_TOL * exact
            table.add("variance_exact", p0, exact, var, tol_var, stat_status(abs(var - exact) <= tol_var))
            table.add("variance_first_order", p0, approx, var, math.nan, INFO)
            table.add("skewness", p0, 0.0, skew, math.nan, INFO)

            ps = self._operating_point_ps(p0)
            ratio = relative_output_variance(ps, self.node) / self.sigma0_sq if self.sigma0_sq > 0 else 0.0
            table.add("transmitter_ratio", p0, ratio, math.nan, mc.TRANSMITTER_RATIO_LIMIT,
                      PASS if ratio < mc.TRANSMITTER_RATIO_LIMIT else FAIL)

            rate = samples.clamp_rate
            table.add("clamp_rate", p0, 0.0, rate, mc.CLAMP_WARN_RATE, PASS if rate <= mc.CLAMP_WARN_RATE else WARN)

        symbol_sim = c.symbol_sim_config()
        symbol_sim = replace(symbol_sim, trials=min(symbol_sim.trials, sim.trials))
        for m in c.get("montecarlo", "symbol_m"):
            self._validate_symbols(table, m, symbol_sim, stat_status)
        return table

    def _reachable(self, p0: float, table: Table) -> bool:
        """False (with a warn row) when the transmitter cannot drive the receiver to p0."""
        A_0 = concentration_for_probability(p0, self.kinetics)
        a_sat = saturation_concentration(self.node, self.channel)
        if A_0 < a_sat:
            return True
        log.warning("[LINK] p0=%.4g needs %.4g nM at the receiver, above saturation %.4g nM; skipped", p0, A_0, a_sat)
        table.add("unreachable", p0, A_0, a_sat, math.nan, WARN)
        return False

    def _operating_point_ps(self, p0: float) -> float:
        return concentration_for_probability(p0, self.kinetics) / saturation_concentration(self.node, self.channel)

    def _validate_symbols(self, table: Table, m: int, sim: SimConfig, stat_status):
        mc = MonteCarloConfig()
        p_max = p_max_from_amax(self.config.get("montecarlo", "symbol_a_max_nm"), self.kinetics)
        if not self._reachable(p_max, table):
            return
        spec = MarySpec.with_optimal_weights(m, p_max, self.node, self.sigma0_sq,
                                             self.config.get("modulation", "k_out"), self.tolerance)
        n_total = self.node.receptors
        stds = [math.sqrt(exact_receiver_variance(float(p), self.node, self.channel).total) / n_total
                for p in spec.levels]
        errs = symbol_error_probs(spec, self.node, self.sigma0_sq, stds=stds)
        analytic = total_error(spec, errs)
        est = empirical_symbol_error(spec, self.node, self.channel, sim)
        se = math.sqrt(float((spec.weights ** 2 * errs * (1.0 - errs)).sum()) / sim.trials)
        tol = 3.0 * max(se, est.total_stderr) + mc.SYMBOL_REL_TOL * analytic
        table.add("symbol_error", m, analytic, est.total, tol, stat_status(abs(est.total - analytic) <= tol))



def samples_table(points: Iterable[Tuple[float, LinkSamples]]) -> Table:
    """Raw Monte-Carlo draws, one row per trial."""
    table = Table("samples/1", ["p0", "trial", "x", "a_r_nM", "y"])
    for p0, samples in points:
        for i, x, a_r, y in samples.rows():
            table.add(p0, i, x, a_r, y)
    return table
