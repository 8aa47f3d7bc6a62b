# src/qslink/link_tools/montecarlo/montecarlo.py
"""
Exact stochastic oracle for the whole link.

Every trial draws the distance error once, then per transmitter bacterium a
noisy (gamma, kappa) pair and a Binomial(N, p_s) receptor count; the receiver
sees A_r = alpha X / (4 pi D (r0 + eps_r)) and repeats the per-bacterium draw.
Nothing is linearised.

Trials are split into fixed-size chunks, each with its own PCG64 stream keyed
by (seed, stream, chunk), so the samples are identical for any thread count.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterator, Optional, Tuple

import numpy as np
from scipy import stats

from ..channel import ChannelParams, required_stimulus
from ..core import DomainError, require
from ..kinetics import concentration_for_probability
from ..modulation import MarySpec
from ..transmitter import NodeParams, noiseless_entrapment
from .montecarlo_config import MonteCarloConfig

log = logging.getLogger("qslink.montecarlo")

_DEFAULTS = MonteCarloConfig()


@dataclass(frozen=True)
class SimConfig:
    trials: int = _DEFAULTS.TRIALS
    seed: int = _DEFAULTS.SEED
    truncate_probabilities: bool = _DEFAULTS.TRUNCATE_PROBABILITIES
    transmitter_noise: bool = True
    distance_noise: bool = True
    receiver_noise: bool = True
    threads: int = 1
    chunk_size: int = _DEFAULTS.CHUNK_SIZE
    stream: int = 0

    def __post_init__(self):
        require(int(self.trials) == self.trials and self.trials >= 1, f"trials must be >= 1, got {self.trials}")
        require(0 <= self.seed < 2 ** 64, f"seed must be an unsigned 64-bit integer, got {self.seed}")
        require(self.threads >= 1, f"threads must be >= 1, got {self.threads}")
        require(self.chunk_size >= 1, f"chunk_size must be >= 1, got {self.chunk_size}")
        require(self.stream >= 0, f"stream must be >= 0, got {self.stream}")

    def generator(self, chunk: int) -> np.random.Generator:
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream, chunk))
        return np.random.Generator(np.random.PCG64(seq))


@dataclass(frozen=True, eq=False)
class LinkSamples:
    """Per-trial samples of the transmitter count X, receiver concentration A_r (nM) and output Y."""
    x: np.ndarray
    a_r: np.ndarray
    y: np.ndarray
    clamped: int = 0
    resampled: int = 0
    evaluated: int = 0

    @property
    def clamp_rate(self) -> float:
        return self.clamped / self.evaluated if self.evaluated else 0.0

    def rows(self) -> Iterator[Tuple[int, float, float, float]]:
        for i, (x, a, y) in enumerate(zip(self.x, self.a_r, self.y)):
            yield i, float(x), float(a), float(y)


@dataclass(frozen=True, eq=False)
class SymbolErrorEstimate:
    per_symbol: np.ndarray
    stderr: np.ndarray
    total: float
    total_stderr: float
    trials_per_symbol: int


@dataclass
class _Counters:
    clamped: int = 0
    evaluated: int = 0
    resampled: int = 0


def _entrapment(A, gamma, kappa, truncate: bool, counters: _Counters) -> np.ndarray:
    """A gamma / (A gamma + kappa) with out-of-range draws clamped (or rejected)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        p = A * gamma / (A * gamma + kappa)
    bad = ~((p >= 0.0) & (p <= 1.0))
    counters.evaluated += p.size
    n_bad = int(np.count_nonzero(bad))
    if n_bad:
        if not truncate:
            raise DomainError(f"{n_bad} sampled entrapment probabilities fell outside [0, 1]")
        counters.clamped += n_bad
        p = np.where(np.isnan(p), 0.0, np.clip(p, 0.0, 1.0))
    return p


def _draw_parameters(rng: np.random.Generator, shape, node: NodeParams, noisy: bool):
    k = node.kinetics
    if not noisy:
        return np.full(shape, k.gamma), np.full(shape, k.kappa)
    gamma = k.gamma + rng.normal(0.0, math.sqrt(node.sigma_gamma_sq), size=shape)
    kappa = k.kappa + rng.normal(0.0, math.sqrt(node.sigma_kappa_sq), size=shape)
    return gamma, kappa


def _distances(rng: np.random.Generator, size: int, ch: ChannelParams, noisy: bool, counters: _Counters) -> np.ndarray:
    r = np.full(size, ch.r0)
    if not noisy or ch.sigma_r_sq == 0.0:
        return r
    sigma = math.sqrt(ch.sigma_r_sq)
    r = ch.r0 + rng.normal(0.0, sigma, size=size)
    bad = r <= 0.0
    while bad.any():
        counters.resampled += int(bad.sum())
        r[bad] = ch.r0 + rng.normal(0.0, sigma, size=int(bad.sum()))
        bad = r <= 0.0
    return r


def _simulate_chunk(chunk: int, size: int, A_s: float, node: NodeParams, ch: ChannelParams, cfg: SimConfig):
    rng = cfg.generator(chunk)
    counters = _Counters()
    n, N = node.n, node.N
    k = node.kinetics

    r = _distances(rng, size, ch, cfg.distance_noise, counters)

    if cfg.transmitter_noise:
        gamma, kappa = _draw_parameters(rng, (size, n), node, True)
        p_s = _entrapment(A_s, gamma, kappa, cfg.truncate_probabilities, counters)
        x = rng.binomial(N, p_s).sum(axis=1).astype(float)
    else:
        x = np.full(size, node.receptors * noiseless_entrapment(A_s, node))

    a_r = k.alpha * x / (4.0 * math.pi * ch.D * r)

    gamma, kappa = _draw_parameters(rng, (size, n), node, cfg.receiver_noise)
    p_r = _entrapment(a_r[:, None], gamma, kappa, cfg.truncate_probabilities, counters)
    y = rng.binomial(N, p_r).sum(axis=1).astype(float)
    return x, a_r, y, counters


def simulate_link(A_s: float, node: NodeParams, ch: ChannelParams, cfg: Optional[SimConfig] = None) -> LinkSamples:
    cfg = cfg or SimConfig()
    require(A_s >= 0, f"A_s must be >= 0, got {A_s}")
    sizes = [cfg.chunk_size] * (cfg.trials // cfg.chunk_size)
    if cfg.trials % cfg.chunk_size:
        sizes.append(cfg.trials % cfg.chunk_size)

    def run(item):
        chunk, size = item
        return _simulate_chunk(chunk, size, A_s, node, ch, cfg)

    if cfg.threads > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            parts = list(pool.map(run, enumerate(sizes)))
    else:
        parts = [run(item) for item in enumerate(sizes)]

    samples = LinkSamples(
        x=np.concatenate([p[0] for p in parts]),
        a_r=np.concatenate([p[1] for p in parts]),
        y=np.concatenate([p[2] for p in parts]),
        clamped=sum(p[3].clamped for p in parts),
        resampled=sum(p[3].resampled for p in parts),
        evaluated=sum(p[3].evaluated for p in parts),
    )
    if samples.clamp_rate > _DEFAULTS.CLAMP_WARN_RATE:
        log.warning("[MONTECARLO] %.2e of sampled probabilities were clamped to [0, 1]", samples.clamp_rate)
    if samples.resampled:
        log.info("[MONTECARLO] resampled %d non-positive distance draws", samples.resampled)
    log.debug("[MONTECARLO] A_s=%.6g nM: %d trials in %d chunks", A_s, cfg.trials, len(sizes))
    return samples


def empirical_moments(samples) -> Tuple[float, float, float]:
    """(mean, unbiased variance, bias-corrected skewness)."""
    y = np.asarray(samples, dtype=float)
    require(y.size >= 2, f"need at least 2 samples, got {y.size}")
    mean = float(np.mean(y))
    var = float(np.var(y, ddof=1))
    if var == 0.0 or y.size < 3:
        return mean, var, 0.0
    return mean, var, float(stats.skew(y, bias=False))


def empirical_symbol_error(spec: MarySpec, node: NodeParams, ch: ChannelParams,
                           cfg: Optional[SimConfig] = None) -> SymbolErrorEstimate:
    """Hard-decision error rates from simulated transmissions of every symbol.

    Symbol i is sent with the stimulus that puts the mean receiver
    concentration at level p_i; each symbol uses its own random stream.
    """
    cfg = cfg or SimConfig(trials=_DEFAULTS.SYMBOL_TRIALS)
    spacing = spec.p_max / (spec.m - 1)
    scale = node.receptors
    rates = np.empty(spec.m)
    for i, p in enumerate(spec.levels):
        A_s = required_stimulus(concentration_for_probability(float(p), node.kinetics), node, ch)
        samples = simulate_link(A_s, node, ch, replace(cfg, stream=cfg.stream + i + 1))
        decided = np.clip(np.rint(samples.y / scale / spacing), 0, spec.m - 1).astype(int)
        rates[i] = np.count_nonzero(decided != i) / cfg.trials
    stderr = np.sqrt(rates * (1.0 - rates) / cfg.trials)
    total = math.fsum(spec.weights * rates)
    total_stderr = math.sqrt(math.fsum(spec.weights ** 2 * stderr ** 2))
    log.info("[MONTECARLO] m=%d symbol error %.3e +/- %.1e over %d trials per symbol",
             spec.m, total, total_stderr, cfg.trials)
    return SymbolErrorEstimate(per_symbol=rates, stderr=stderr, total=total,
                               total_stderr=total_stderr, trials_per_symbol=cfg.trials)
