# src/qslink/link_tools/kinetics/kinetics.py
"""
Per-bacterium ligand binding and gene expression.

Binding follows dp/dt = -kappa p + A gamma (1 - p); expression is the
two-stage linear cascade

    dS1/dt = (b0 p + a0) - b1 S1
    dS2/dt = a1 S1 - b2 S2

Time is in minutes throughout this module, concentrations in nM.
"""
import logging
import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

from ..core import DegenerateRateError, require
from .kinetics_config import KineticsConfig

log = logging.getLogger("qslink.kinetics")

_DEFAULTS = KineticsConfig()


@dataclass(frozen=True)
class KineticParams:
    """Binding and expression constants of one bacterium.

    Attributes:
        gamma (float): input gain, per nM per min.
        kappa (float): dissociation rate, per min.
        a0, a1, b0, b1, b2 (float): expression cascade constants.
        alpha (float): molecule output per activated receptor (nM cm^3 / s).
        N (int): ligand receptors per bacterium.
    """
    gamma: float = _DEFAULTS.GAMMA
    kappa: float = _DEFAULTS.KAPPA
    a0: float = _DEFAULTS.A0
    a1: float = _DEFAULTS.A1
    b0: float = _DEFAULTS.B0
    b1: float = _DEFAULTS.B1
    b2: float = _DEFAULTS.B2
    alpha: float = _DEFAULTS.ALPHA
    N: int = _DEFAULTS.RECEPTORS

    def __post_init__(self):
        require(self.gamma > 0, f"gamma must be > 0, got {self.gamma}")
        require(self.kappa > 0, f"kappa must be > 0, got {self.kappa}")
        require(self.b1 > 0, f"b1 must be > 0, got {self.b1}")
        require(self.b2 > 0, f"b2 must be > 0, got {self.b2}")
        require(self.alpha >= 0, f"alpha must be >= 0, got {self.alpha}")
        require(int(self.N) == self.N and self.N >= 1, f"N must be a positive integer, got {self.N}")

    @classmethod
    def from_config(cls, cfg: Optional[KineticsConfig] = None) -> "KineticParams":
        cfg = cfg or KineticsConfig()
        return cls(
            gamma=cfg.GAMMA, kappa=cfg.KAPPA,
            a0=cfg.A0, a1=cfg.A1, b0=cfg.B0, b1=cfg.B1, b2=cfg.B2,
            alpha=cfg.ALPHA, N=cfg.RECEPTORS,
        )

    @classmethod
    def from_cascade(cls, **kwargs) -> "KineticParams":
        """Build parameters with alpha tied to the cascade: alpha N = a1 b0 / (b1 b2)."""
        kwargs.pop("alpha", None)
        base = cls(**kwargs)
        return replace(base, alpha=base.a1 * base.b0 / (base.N * base.b1 * base.b2))

    @property
    def half_saturation(self) -> float:
        """Concentration kappa / gamma at which p* = 1/2."""
        return self.kappa / self.gamma


def steady_binding_probability(A: float, k: KineticParams) -> float:
    """p* = A gamma / (A gamma + kappa)."""
    require(A >= 0, f"concentration must be >= 0, got {A}")
    if math.isinf(A):
        return 1.0
    return A * k.gamma / (A * k.gamma + k.kappa)


def concentration_for_probability(p: float, k: KineticParams) -> float:
    """Inverse of steady_binding_probability on [0, 1)."""
    require(0.0 <= p < 1.0, f"probability must lie in [0, 1), got {p}")
    return k.kappa * p / (k.gamma * (1.0 - p))


def binding_time_constant(A: float, k: KineticParams) -> float:
    require(A >= 0, f"concentration must be >= 0, got {A}")
    return 1.0 / (A * k.gamma + k.kappa)


def binding_transient(A: float, k: KineticParams, p_init: float, t: float) -> float:
    """Closed-form p(t) for a constant concentration A switched on at t = 0."""
    require(t >= 0, f"time must be >= 0, got {t}")
    require(0.0 <= p_init <= 1.0, f"p_init must lie in [0, 1], got {p_init}")
    p_star = steady_binding_probability(A, k)
    rate = A * k.gamma + k.kappa
    return p_star + (p_init - p_star) * math.exp(-rate * t)


def gfp_steady(p_star: float, k: KineticParams) -> float:
    """Steady expression level S2* = a1 (b0 p* + a0) / (b1 b2)."""
    require(0.0 <= p_star <= 1.0, f"p_star must lie in [0, 1], got {p_star}")
    return k.a1 * (k.b0 * p_star + k.a0) / (k.b1 * k.b2)


def _cascade_distinct(drive: float, k: KineticParams, t: float) -> float:
    if math.isclose(k.b1, k.b2, rel_tol=_DEFAULTS.CONFLUENT_RTOL):
        raise DegenerateRateError("b1 == b2: distinct-pole form undefined, use the confluent form")
    b1, b2 = k.b1, k.b2
    shape = (b2 * math.exp(-b1 * t) - b1 * math.exp(-b2 * t)) / (b2 - b1)
    return k.a1 * drive / (b1 * b2) * (1.0 - shape)


def _cascade_confluent(drive: float, k: KineticParams, t: float) -> float:
    b = k.b1
    return k.a1 * drive / (b * b) * (1.0 - math.exp(-b * t) * (1.0 + b * t))


def expression_transient(p: float, k: KineticParams, t: float) -> Tuple[float, float]:
    """(S1(t), S2(t)) for a constant binding probability p, from zero initial state."""
    require(t >= 0, f"time must be >= 0, got {t}")
    require(0.0 <= p <= 1.0, f"p must lie in [0, 1], got {p}")
    drive = k.b0 * p + k.a0
    s1 = drive / k.b1 * (1.0 - math.exp(-k.b1 * t))
    if math.isclose(k.b1, k.b2, rel_tol=_DEFAULTS.CONFLUENT_RTOL):
        s2 = _cascade_confluent(drive, k, t)
    else:
        s2 = _cascade_distinct(drive, k, t)
    return s1, s2


def transient_table(A: float, k: KineticParams, t_end: float, steps: int):
    """Rows (t, p, S1, S2) of the full binding + expression response.

    Expression is driven by the steady binding probability (binding settles in
    minutes, expression in hours).
    """
    require(steps >= 1, f"steps must be >= 1, got {steps}")
    require(t_end > 0, f"t_end must be > 0, got {t_end}")
    p_star = steady_binding_probability(A, k)
    rows = []
    for i in range(steps + 1):
        t = t_end * i / steps
        s1, s2 = expression_transient(p_star, k, t)
        rows.append((t, binding_transient(A, k, 0.0, t), s1, s2))
    log.debug("[KINETICS] transient table A=%s nM, %d rows", A, len(rows))
    return rows


def cascade_distinct_poles(p: float, k: KineticParams, t: float) -> float:
    """S2(t) from the distinct-pole closed form; raises DegenerateRateError when b1 == b2."""
    require(t >= 0, f"time must be >= 0, got {t}")
    return _cascade_distinct(k.b0 * p + k.a0, k, t)
