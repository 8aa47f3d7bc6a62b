# src/qslink/link_tools/core/core.py
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import optimize, special

from .core_config import CoreConfig

log = logging.getLogger("qslink.core")


class LinkError(Exception):
    pass


class DomainError(LinkError, ValueError):
    pass


class BracketError(LinkError, ValueError):
    pass


class ConvergenceError(LinkError, RuntimeError):
    def __init__(self, message: str, achieved: Optional[float] = None):
        super().__init__(message)
        self.achieved = achieved


class SaturationError(DomainError):
    pass


class DegenerateRateError(DomainError):
    pass


class ConfigError(LinkError):
    pass


@dataclass(frozen=True)
class Tolerance:
    abs: float = 1e-6
    rel: float = 1e-9
    max_iter: int = 10000

    def __post_init__(self):
        if not self.abs > 0:
            raise DomainError(f"tolerance abs must be > 0, got {self.abs}")
        if not self.rel > 0:
            raise DomainError(f"tolerance rel must be > 0, got {self.rel}")
        if int(self.max_iter) < 1:
            raise DomainError(f"tolerance max_iter must be >= 1, got {self.max_iter}")

    @classmethod
    def default(cls) -> "Tolerance":
        cfg = CoreConfig()
        return cls(abs=cfg.ABS_TOL, rel=cfg.REL_TOL, max_iter=cfg.MAX_ITER)


def require(condition: bool, message: str, error=DomainError):
    if not condition:
        raise error(message)


def reaches(value: float, limit: float) -> bool:
    """value >= limit, with round-off at the boundary counted as reaching it."""
    return value >= limit or math.isclose(value, limit, rel_tol=1e-9)


def erf(x: float) -> float:
    """Error function (2/sqrt(pi)) * integral_0^x exp(-u^2) du."""
    require(math.isfinite(x), f"erf needs a finite argument, got {x}")
    return float(special.erf(x))


def erfc(x: float) -> float:
    """Complementary error function; accurate in the far tail (no 1 - erf cancellation)."""
    require(math.isfinite(x), f"erfc needs a finite argument, got {x}")
    return float(special.erfc(x))


def inverse_erfc(q: float) -> float:
    """Solve erfc(x) = q for q in (0, 2).

    The closed-form estimate from ``scipy.special.erfcinv`` seeds a bracket
    that is then polished with Brent's method until the residual is below
    ``CoreConfig.ERFC_RESIDUAL``.
    """
    require(0.0 < q < 2.0, f"inverse_erfc needs 0 < q < 2, got {q}")
    x0 = float(special.erfcinv(q))
    lo, hi = x0 - 0.5, x0 + 0.5

    def f(x):
        return float(special.erfc(x)) - q

    # erfc is decreasing: f(lo) > 0 > f(hi)
    while f(lo) < 0:
        lo -= 1.0
    while f(hi) > 0:
        hi += 1.0
    root = optimize.brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    residual = abs(f(root))
    if residual > CoreConfig().ERFC_RESIDUAL * max(1.0, q):
        raise ConvergenceError(f"inverse_erfc residual {residual:.3e} at q={q}", achieved=residual)
    return float(root)


def gaussian_cdf(x, mean=0.0, std=1.0):
    """Normal CDF; std == 0 is a point mass at ``mean`` (step, right-continuous).

    Accepts scalars or numpy arrays (broadcast together).
    """
    x = np.asarray(x, dtype=float)
    mean = np.asarray(mean, dtype=float)
    std = np.asarray(std, dtype=float)
    if np.any(std < 0):
        raise DomainError("gaussian_cdf needs std >= 0")
    safe = np.where(std > 0, std, 1.0)
    smooth = special.ndtr((x - mean) / safe)
    step = np.where(x >= mean, 1.0, 0.0)
    out = np.where(std > 0, smooth, step)
    if out.ndim == 0:
        return float(out)
    return out


def bisect(f: Callable[[float], float], lo: float, hi: float, target: float = 0.0,
           tol: Optional[Tolerance] = None) -> float:
    """Bisection for f(x) = target on [lo, hi].

    The returned x lies within tol.abs of the root (up to a few ulps of x),
    wherever the root sits on the axis. Raises BracketError when
    f(lo) - target and f(hi) - target share a sign and ConvergenceError when
    the iteration budget runs out.
    """
    tol = tol or Tolerance.default()

    def g(x):
        return f(x) - target

    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0:
        return float(lo)
    if g_hi == 0:
        return float(hi)
    if np.sign(g_lo) == np.sign(g_hi):
        raise BracketError(f"no sign change on [{lo}, {hi}] (f-target = {g_lo:.3e}, {g_hi:.3e})")
    try:
        root, info = optimize.bisect(
            g, lo, hi,
            xtol=tol.abs, rtol=4 * np.finfo(float).eps,
            maxiter=int(tol.max_iter), full_output=True, disp=False,
        )
    except ValueError as ex:
        raise BracketError(str(ex)) from ex
    if not info.converged:
        raise ConvergenceError(
            f"bisection stopped after {info.iterations} iterations", achieved=abs(g(root))
        )
    return float(root)
