# src/qslink/link_tools/capacity/capacity.py
"""
Capacity of the p0 -> Y channel.

The receiver output is normalised to y = Y / (nN), so input i produces a
Gaussian with mean p_i and std p_i (1 - p_i) sigma0 / sqrt(n). The channel is
discretised onto K_in uniform input levels and K_out uniform output bins, and
Blahut-Arimoto finds the capacity and the maximising input distribution.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import special

from ..core import ConvergenceError, Tolerance, gaussian_cdf, require
from ..kinetics import KineticParams, steady_binding_probability
from ..transmitter import NodeParams
from .capacity_config import CapacityConfig

log = logging.getLogger("qslink.capacity")

_DEFAULTS = CapacityConfig()


@dataclass(frozen=True, eq=False)
class DiscreteChannel:
    """Row-stochastic channel W[i, j] = Pr(y in bin j | input level i)."""
    input_levels: np.ndarray
    output_edges: np.ndarray
    transition: np.ndarray

    def __post_init__(self):
        W = self.transition
        require(W.ndim == 2, "transition must be a matrix")
        require(W.shape[0] == len(self.input_levels), "transition rows must match input levels")
        require(np.all(W >= 0), "transition entries must be >= 0")
        require(np.allclose(W.sum(axis=1), 1.0, atol=1e-9, rtol=0.0), "transition rows must sum to 1")
        if len(self.input_levels) > 1:
            require(np.all(np.diff(self.input_levels) > 0), "input levels must be strictly increasing")

    @classmethod
    def from_matrix(cls, transition) -> "DiscreteChannel":
        """Wrap an arbitrary stochastic matrix with index-valued levels and bins."""
        W = np.asarray(transition, dtype=float)
        return cls(
            input_levels=np.arange(W.shape[0], dtype=float),
            output_edges=np.arange(W.shape[1] + 1, dtype=float),
            transition=W,
        )

    @property
    def p_max(self) -> float:
        return float(self.input_levels[-1])


@dataclass(frozen=True, eq=False)
class CapacityResult:
    capacity_bits: float
    input_distribution: np.ndarray
    iterations: int
    upper_bound_gap: float
    input_levels: np.ndarray
    history: Tuple[float, ...] = field(default=())

    def concentrations(self, k: KineticParams) -> np.ndarray:
        """Receiver concentration A0 (nM) for each input level, inverting p0 = A0 gamma / (A0 gamma + kappa)."""
        p = self.input_levels
        with np.errstate(divide="ignore"):
            return np.where(p < 1.0, k.kappa * p / (k.gamma * (1.0 - p)), np.inf)


@dataclass(frozen=True, eq=False)
class CapacityPoint:
    """One point of a capacity sweep."""
    a_max: float
    p_max: float
    n: int
    sigma0_sq: float
    capacity_bits: float
    iterations: int
    gap_bits: float
    result: Optional[CapacityResult] = None


def p_max_from_amax(A_max: float, k: KineticParams) -> float:
    return steady_binding_probability(A_max, k)


def output_std(p, n: int, sigma0_sq: float):
    """Conditional std of the normalised output at input level p."""
    p = np.asarray(p, dtype=float)
    out = p * (1.0 - p) * math.sqrt(sigma0_sq) / math.sqrt(n)
    return float(out) if out.ndim == 0 else out


def build_discrete_channel(p_max: float, K_in: int, K_out: int, node: NodeParams,
                           sigma0_sq: float) -> DiscreteChannel:
    require(K_in >= 2, f"K_in must be >= 2, got {K_in}")
    require(K_out >= 8, f"K_out must be >= 8, got {K_out}")
    require(0.0 < p_max <= 1.0, f"p_max must lie in (0, 1], got {p_max}")
    require(sigma0_sq >= 0, f"sigma0_sq must be >= 0, got {sigma0_sq}")

    levels = np.linspace(0.0, p_max, K_in)
    levels[-1] = p_max
    stds = output_std(levels, node.n, sigma0_sq)

    # widest conditional spread over the continuous interval [0, p_max]
    s_max = output_std(min(p_max, 0.5), node.n, sigma0_sq)
    pad = _DEFAULTS.TAIL_SIGMAS * s_max
    edges = np.linspace(-pad, 1.0 + pad, K_out + 1)

    cdf = gaussian_cdf(edges[None, :], levels[:, None], stds[:, None])
    W = np.diff(cdf, axis=1)
    W[:, 0] += cdf[:, 0]
    W[:, -1] += 1.0 - cdf[:, -1]
    W = np.clip(W, 0.0, None)
    W /= W.sum(axis=1, keepdims=True)
    log.debug("[CAPACITY] channel p_max=%.4f K_in=%d K_out=%d s_max=%.3e", p_max, K_in, K_out, s_max)
    return DiscreteChannel(input_levels=levels, output_edges=edges, transition=W)


def _divergences(W: np.ndarray, w: np.ndarray, row_entropy: np.ndarray) -> np.ndarray:
    """D(W_i || q) in nats for q = w W."""
    q = w @ W
    log_q = np.log(q, out=np.zeros_like(q), where=q > 0)
    return row_entropy - W @ log_q


def mutual_information(ch: DiscreteChannel, weights) -> float:
    """I(X; Y) in bits for input distribution ``weights``."""
    w = np.asarray(weights, dtype=float)
    require(w.shape == (len(ch.input_levels),), "weights must match the input levels")
    require(np.all(w >= 0) and math.isclose(w.sum(), 1.0, abs_tol=1e-9), "weights must be a distribution")
    W = ch.transition
    D = _divergences(W, w, special.xlogy(W, W).sum(axis=1))
    return float(np.dot(w, D)) / math.log(2.0)


def blahut_arimoto(ch: DiscreteChannel, tol: Optional[Tolerance] = None, strict: bool = True) -> CapacityResult:
    """Capacity of ``ch`` and its maximising input distribution.

    Iterates until the gap between the upper bound max_i D(W_i || q) and the
    lower bound log sum_i w_i exp(D(W_i || q)) is at most ``tol.abs`` bits.
    With ``strict`` an exhausted iteration budget raises ConvergenceError;
    otherwise the last iterate is returned and a warning logged.
    """
    tol = tol or Tolerance(abs=_DEFAULTS.GAP_BITS, max_iter=_DEFAULTS.MAX_ITER)
    W = ch.transition
    row_entropy = special.xlogy(W, W).sum(axis=1)
    w = np.full(W.shape[0], 1.0 / W.shape[0])
    ln2 = math.log(2.0)
    history = []
    lower = gap = 0.0

    for it in range(1, int(tol.max_iter) + 1):
        D = _divergences(W, w, row_entropy)
        top = D.max()
        c = w * np.exp(D - top)
        total = c.sum()
        lower = max(0.0, (math.log(total) + top) / ln2)
        gap = max(0.0, top / ln2 - lower)
        history.append(lower)
        if gap <= tol.abs:
            break
        w = c / total
    else:
        msg = f"Blahut-Arimoto stopped after {tol.max_iter} iterations with gap {gap:.3e} bits"
        if strict:
            raise ConvergenceError(msg, achieved=gap)
        log.warning("[CAPACITY] %s", msg)

    return CapacityResult(
        capacity_bits=lower,
        input_distribution=w,
        iterations=it,
        upper_bound_gap=gap,
        input_levels=ch.input_levels,
        history=tuple(history),
    )


def _capacity_point(a_max: float, p_max: float, node: NodeParams, sigma0_sq: float,
                    K_in: int, K_out: int, tol: Optional[Tolerance]) -> CapacityPoint:
    if p_max == 0.0:
        # a single usable level carries no information
        return CapacityPoint(a_max, 0.0, node.n, sigma0_sq, 0.0, 0, 0.0)
    ch = build_discrete_channel(p_max, K_in, K_out, node, sigma0_sq)
    res = blahut_arimoto(ch, tol, strict=False)
    log.info("[CAPACITY] A_max=%.6g nM n=%d sigma0^2=%.4g -> %.4f bits (%d iterations)",
             a_max, node.n, sigma0_sq, res.capacity_bits, res.iterations)
    return CapacityPoint(a_max, p_max, node.n, sigma0_sq, res.capacity_bits, res.iterations,
                         res.upper_bound_gap, res)


def _run(jobs, threads: int):
    if threads <= 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda job: job(), jobs))


def capacity_vs_amax(amax_grid: Sequence[float], node: NodeParams, sigma0_sq: float,
                     K_in: Optional[int] = None, K_out: Optional[int] = None,
                     tol: Optional[Tolerance] = None, threads: int = 1) -> List[CapacityPoint]:
    grid = [float(a) for a in amax_grid]
    require(len(grid) > 0, "A_max grid must not be empty")
    require(all(b > a for a, b in zip(grid, grid[1:])), "A_max grid must be increasing")
    K_in = K_in or _DEFAULTS.K_IN
    K_out = K_out or _DEFAULTS.K_OUT
    jobs = [
        (lambda a=a: _capacity_point(a, p_max_from_amax(a, node.kinetics), node, sigma0_sq, K_in, K_out, tol))
        for a in grid
    ]
    return _run(jobs, threads)


def capacity_vs_sigma0(sigma0_grid: Sequence[float], A_max: float, node: NodeParams,
                       K_in: Optional[int] = None, K_out: Optional[int] = None,
                       tol: Optional[Tolerance] = None, threads: int = 1) -> List[CapacityPoint]:
    """Capacity at fixed A_max for several noise levels sigma0^2."""
    grid = [float(s) for s in sigma0_grid]
    require(len(grid) > 0, "sigma0^2 grid must not be empty")
    require(all(s >= 0 for s in grid), "sigma0^2 values must be >= 0")
    K_in = K_in or _DEFAULTS.K_IN
    K_out = K_out or _DEFAULTS.K_OUT
    p_max = p_max_from_amax(A_max, node.kinetics)
    jobs = [(lambda s=s: _capacity_point(A_max, p_max, node, s, K_in, K_out, tol)) for s in grid]
    return _run(jobs, threads)
