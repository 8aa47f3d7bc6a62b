# src/qslink/link_tools/channel/channel.py
"""
Free-space diffusion from a point source (cm, s, nM).

A transmitter releasing beta molecules per second from t = 0 to t0 produces at
distance r the concentration

    beta / (4 pi D r) * [erfc(r / sqrt(4 D t)) - erfc(r / sqrt(4 D (t - t0)))]

where the second term only applies once t >= t0.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from scipy import integrate

from ..core import SaturationError, erfc, reaches, require
from ..transmitter import NodeParams, noiseless_entrapment, relative_output_variance
from .channel_config import ChannelConfig

log = logging.getLogger("qslink.channel")

_DEFAULTS = ChannelConfig()

UM_PER_CM = 1e4


def um_to_cm(x: float) -> float:
    return x / UM_PER_CM


def cm_to_um(x: float) -> float:
    return x * UM_PER_CM


@dataclass(frozen=True)
class ChannelParams:
    """Diffusion channel between the two nodes.

    Attributes:
        D (float): diffusion coefficient (cm^2/s).
        r0 (float): nominal distance (cm).
        sigma_r_sq (float): variance of the distance error (cm^2).
        t0 (float): pulse duration (s), inf for a constant source.
    """
    D: float = _DEFAULTS.DIFFUSION
    r0: float = um_to_cm(_DEFAULTS.DISTANCE_UM)
    sigma_r_sq: float = 0.0
    t0: float = _DEFAULTS.PULSE_DURATION

    def __post_init__(self):
        require(self.D > 0, f"D must be > 0, got {self.D}")
        require(self.r0 > 0, f"r0 must be > 0, got {self.r0}")
        require(self.sigma_r_sq >= 0, f"sigma_r_sq must be >= 0, got {self.sigma_r_sq}")
        require(self.t0 > 0, f"t0 must be > 0, got {self.t0}")
        if reaches(self.sigma_r_rel_sq, _DEFAULTS.DISTANCE_REL_LIMIT):
            log.warning(
                "[CHANNEL] sigma_r^2/r0^2 = %.3f reaches %.2f; first-order distance noise is unreliable",
                self.sigma_r_rel_sq, _DEFAULTS.DISTANCE_REL_LIMIT,
            )

    @classmethod
    def from_microns(cls, r0_um: float, sigma_r_rel_sq: float = 0.0,
                     D: float = _DEFAULTS.DIFFUSION, t0: float = _DEFAULTS.PULSE_DURATION) -> "ChannelParams":
        """Distance in um, distance noise relative to r0^2."""
        r0 = um_to_cm(r0_um)
        return cls(D=D, r0=r0, sigma_r_sq=sigma_r_rel_sq * r0 ** 2, t0=t0)

    @property
    def sigma_r_rel_sq(self) -> float:
        return self.sigma_r_sq / self.r0 ** 2

    @property
    def diffusion_time(self) -> float:
        """r0^2 / 4D, the natural time scale of the link (s)."""
        return self.r0 ** 2 / (4.0 * self.D)


@dataclass(frozen=True)
class ReceiverConcentrationStats:
    """Steady concentration at the receiver, A_r = A0 (1 + eps_t - eps_r / r0)."""
    mean: float
    sigma_t_sq: float
    sigma_r_rel_sq: float


def arrival_fraction(r: float, t: float, ch: ChannelParams) -> float:
    """erfc(r / sqrt(4 D t)): share of the steady value reached t seconds after switch-on."""
    require(r >= 0, f"distance must be >= 0, got {r}")
    if t <= 0:
        return 0.0
    if math.isinf(t):
        return 1.0
    return erfc(r / math.sqrt(4.0 * ch.D * t))


def green_impulse(r: float, t: float, ch: ChannelParams) -> float:
    """Concentration density at distance r, t seconds after a unit release."""
    require(t > 0, f"time must be > 0, got {t}")
    require(r >= 0, f"distance must be >= 0, got {r}")
    four_dt = 4.0 * ch.D * t
    return (math.pi * four_dt) ** -1.5 * math.exp(-r * r / four_dt)


def steady_concentration(beta: float, r: float, ch: ChannelParams) -> float:
    require(r > 0, f"distance must be > 0, got {r}")
    require(beta >= 0, f"beta must be >= 0, got {beta}")
    return beta / (4.0 * math.pi * ch.D * r)


def step_response(r: float, t: float, beta: float, ch: ChannelParams) -> float:
    """Concentration at r for a source of rate beta switched on at 0 and off at ch.t0."""
    require(r > 0, f"step response is singular at r = {r}")
    require(t >= 0, f"time must be >= 0, got {t}")
    level = steady_concentration(beta, r, ch)
    rising = arrival_fraction(r, t, ch)
    if t < ch.t0:
        return level * rising
    return level * (rising - arrival_fraction(r, t - ch.t0, ch))


def pulse_convolution(r: float, t: float, beta: float, ch: ChannelParams) -> float:
    """step_response computed by direct quadrature of green_impulse over the emission window."""
    require(r > 0, f"distance must be > 0, got {r}")
    require(t >= 0, f"time must be >= 0, got {t}")
    if t == 0:
        return 0.0
    lo = max(0.0, t - ch.t0)
    peak = r * r / (6.0 * ch.D)
    points = [peak] if lo < peak < t else None
    value, _ = integrate.quad(
        lambda u: green_impulse(r, u, ch), lo, t,
        points=points, limit=_DEFAULTS.QUAD_LIMIT, epsabs=0.0, epsrel=_DEFAULTS.QUAD_EPSREL,
    )
    return beta * value


def saturation_concentration(node: NodeParams, ch: ChannelParams) -> float:
    """A_sat = alpha n N / (4 pi D r0): receiver concentration with every transmitter receptor bound."""
    return node.kinetics.alpha * node.receptors / (4.0 * math.pi * ch.D * ch.r0)


def receiver_concentration_stats(A_s: float, node: NodeParams, ch: ChannelParams) -> ReceiverConcentrationStats:
    ps = noiseless_entrapment(A_s, node)
    return ReceiverConcentrationStats(
        mean=saturation_concentration(node, ch) * ps,
        sigma_t_sq=relative_output_variance(ps, node),
        sigma_r_rel_sq=ch.sigma_r_rel_sq,
    )


def required_stimulus(A_0: float, node: NodeParams, ch: ChannelParams) -> float:
    """Transmitter stimulus A_s that yields mean receiver concentration A_0."""
    require(A_0 >= 0, f"A_0 must be >= 0, got {A_0}")
    a_sat = saturation_concentration(node, ch)
    if A_0 >= a_sat:
        raise SaturationError(f"A_0 = {A_0:.6g} nM is not reachable (saturation at {a_sat:.6g} nM)")
    k = node.kinetics
    return k.kappa * A_0 / (k.gamma * (a_sat - A_0))


def channel_table(r: float, beta: float, ch: ChannelParams,
                  t_end: Optional[float] = None, steps: Optional[int] = None) -> List[Tuple[float, float, float, float]]:
    """Rows (t, rise ratio, constant-source response, pulse response) on a uniform time grid."""
    t_end = _DEFAULTS.DUMP_T_END if t_end is None else t_end
    steps = _DEFAULTS.DUMP_STEPS if steps is None else steps
    require(t_end > 0, f"t_end must be > 0, got {t_end}")
    require(steps >= 1, f"steps must be >= 1, got {steps}")
    constant = ChannelParams(D=ch.D, r0=ch.r0, sigma_r_sq=ch.sigma_r_sq)
    rows = []
    for i in range(steps + 1):
        t = t_end * i / steps
        rows.append((t, arrival_fraction(r, t, ch), step_response(r, t, beta, constant), step_response(r, t, beta, ch)))
    log.debug("[CHANNEL] dumped %d rows at r=%.3g cm", len(rows), r)
    return rows
