# src/qslink/link_tools/modulation/modulation.py
"""
M-ary signalling over the normalised receiver output.

Symbol i is the entrapment level p_i = p_max i / (m - 1). The decoder picks
the nearest level, so symbol i is lost when the output noise exceeds half
the level spacing, d = p_max / (2 (m - 1)).
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ..capacity import blahut_arimoto, build_discrete_channel, mutual_information, output_std, p_max_from_amax
from ..core import Tolerance, gaussian_cdf, require
from ..transmitter import NodeParams
from .modulation_config import ModulationConfig

log = logging.getLogger("qslink.modulation")

_DEFAULTS = ModulationConfig()


@dataclass(frozen=True, eq=False)
class MarySpec:
    """m uniformly spaced symbols on [0, p_max] with prior weights (uniform when omitted)."""
    m: int
    p_max: float
    weights: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        require(int(self.m) == self.m and self.m >= 2, f"m must be an integer >= 2, got {self.m}")
        require(0.0 < self.p_max <= 1.0, f"p_max must lie in (0, 1], got {self.p_max}")
        if self.weights is None:
            object.__setattr__(self, "weights", np.full(self.m, 1.0 / self.m))
        w = np.asarray(self.weights, dtype=float)
        require(w.shape == (self.m,), f"expected {self.m} weights, got {w.shape}")
        require(np.all(w >= 0) and math.isclose(w.sum(), 1.0, abs_tol=1e-9), "weights must be a distribution")
        object.__setattr__(self, "weights", w)

    @classmethod
    def with_optimal_weights(cls, m: int, p_max: float, node: NodeParams, sigma0_sq: float,
                             K_out: Optional[int] = None, tol: Optional[Tolerance] = None) -> "MarySpec":
        """Weights from Blahut-Arimoto on the m-level channel."""
        ch = build_discrete_channel(p_max, m, K_out or _DEFAULTS.K_OUT, node, sigma0_sq)
        res = blahut_arimoto(ch, tol, strict=False)
        return cls(m=m, p_max=p_max, weights=res.input_distribution)

    @property
    def levels(self) -> np.ndarray:
        return self.p_max * np.arange(self.m) / (self.m - 1)

    @property
    def half_spacing(self) -> float:
        return self.p_max / (2.0 * (self.m - 1))


@dataclass(frozen=True, eq=False)
class MaryResult:
    per_symbol_error: np.ndarray
    total_error: float
    rate_bits: float
    log2m: float
    weights: np.ndarray


@dataclass(frozen=True, eq=False)
class MaryPoint:
    m: int
    a_max: float
    p_max: float
    result: MaryResult


def symbol_error_probs(spec: MarySpec, node: NodeParams, sigma0_sq: float,
                       one_sided_endpoints: bool = False, stds=None) -> np.ndarray:
    """Hard-decision error probability of each symbol.

    ``stds`` overrides the per-symbol output std (normalised units); by default
    it is p_i (1 - p_i) sigma0 / sqrt(n).
    """
    require(sigma0_sq >= 0, f"sigma0_sq must be >= 0, got {sigma0_sq}")
    if stds is None:
        s = output_std(spec.levels, node.n, sigma0_sq)
    else:
        s = np.asarray(stds, dtype=float)
        require(s.shape == (spec.m,), f"expected {spec.m} stds, got {s.shape}")
    d = spec.half_spacing
    tail = gaussian_cdf(-d, 0.0, s)
    errs = 2.0 * tail
    if one_sided_endpoints:
        errs[0] = tail[0]
        errs[-1] = tail[-1]
    return np.clip(errs, 0.0, 1.0)


def total_error(spec: MarySpec, errs) -> float:
    errs = np.asarray(errs, dtype=float)
    require(errs.shape == (spec.m,), f"expected {spec.m} error values, got {errs.shape}")
    return math.fsum(spec.weights * errs)


def mary_rate(spec: MarySpec, node: NodeParams, sigma0_sq: float, K_out: Optional[int] = None,
              one_sided_endpoints: bool = False) -> MaryResult:
    ch = build_discrete_channel(spec.p_max, spec.m, K_out or _DEFAULTS.K_OUT, node, sigma0_sq)
    errs = symbol_error_probs(spec, node, sigma0_sq, one_sided_endpoints)
    return MaryResult(
        per_symbol_error=errs,
        total_error=total_error(spec, errs),
        rate_bits=mutual_information(ch, spec.weights),
        log2m=math.log2(spec.m),
        weights=spec.weights,
    )


def _mary_point(m: int, a_max: float, node: NodeParams, sigma0_sq: float, K_out: Optional[int],
                tol: Optional[Tolerance], one_sided_endpoints: bool) -> MaryPoint:
    p_max = p_max_from_amax(a_max, node.kinetics)
    spec = MarySpec.with_optimal_weights(m, p_max, node, sigma0_sq, K_out, tol)
    res = mary_rate(spec, node, sigma0_sq, K_out, one_sided_endpoints)
    log.info("[MODULATION] m=%d A_max=%.6g nM: rate %.4f bits, error %.3e", m, a_max, res.rate_bits, res.total_error)
    return MaryPoint(m=m, a_max=a_max, p_max=p_max, result=res)


def error_vs_amax(m: int, amax_grid: Sequence[float], node: NodeParams, sigma0_sq: float,
                  K_out: Optional[int] = None, tol: Optional[Tolerance] = None,
                  one_sided_endpoints: bool = False, threads: int = 1) -> List[MaryPoint]:
    grid = [float(a) for a in amax_grid]
    require(len(grid) > 0, "A_max grid must not be empty")
    require(grid[0] > 0, "A_max values must be > 0")
    require(all(b > a for a, b in zip(grid, grid[1:])), "A_max grid must be increasing")

    def point(a):
        return _mary_point(m, a, node, sigma0_sq, K_out, tol, one_sided_endpoints)

    if threads <= 1:
        return [point(a) for a in grid]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(point, grid))
