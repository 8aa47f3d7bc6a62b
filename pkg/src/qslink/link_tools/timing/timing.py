# src/qslink/link_tools/timing/timing.py
"""
Return-to-zero link timing.

A sample costs the channel rise time, the reception delay of the receiver's
expression cascade and the channel fall time once the transmitter stops.
Channel times are in seconds, reception times in minutes.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

from ..channel import ChannelParams, arrival_fraction
from ..core import BracketError, Tolerance, bisect, inverse_erfc, require
from ..kinetics import KineticParams, binding_time_constant
from .timing_config import TimingConfig

log = logging.getLogger("qslink.timing")

_DEFAULTS = TimingConfig()

SECONDS_PER_MINUTE = 60.0
SECONDS_PER_HOUR = 3600.0


@dataclass(frozen=True)
class DelayBreakdown:
    """Delays of one return-to-zero sample.

    Attributes:
        t_rise (float): channel rise time (s).
        t_fall (float): channel fall time after the pulse ends (s).
        t_reception (float): receiver reception delay (min).
        t_total (float): rise + reception + fall (s).
    """
    t_rise: float
    t_fall: float
    t_reception: float
    t_total: float
    rise_threshold: float = _DEFAULTS.RISE_THRESHOLD
    fall_threshold: float = _DEFAULTS.FALL_THRESHOLD

    @property
    def t0(self) -> float:
        """Stimulation time (s): the transmitter stays on for the rise plus the reception delay."""
        return self.t_rise + self.t_reception * SECONDS_PER_MINUTE

    @property
    def t_total_hours(self) -> float:
        return self.t_total / SECONDS_PER_HOUR


def _check_threshold(threshold: float):
    require(0.0 < threshold < 1.0, f"threshold must lie in (0, 1), got {threshold}")


def rise_ratio(r: float, t: float, ch: ChannelParams) -> float:
    require(t > 0, f"time must be > 0, got {t}")
    return arrival_fraction(r, t, ch)


def rise_time(r: float, ch: ChannelParams, threshold: float = _DEFAULTS.RISE_THRESHOLD) -> float:
    """Time for the concentration at r to reach ``threshold`` of its steady value."""
    require(r > 0, f"distance must be > 0, got {r}")
    _check_threshold(threshold)
    x = inverse_erfc(threshold)
    return r * r / (4.0 * ch.D) / (x * x)


def fall_time(r: float, t0: float, ch: ChannelParams, threshold: float = _DEFAULTS.FALL_THRESHOLD,
              tol: Optional[Tolerance] = None) -> float:
    """Time after the pulse end until the concentration at r drops to ``threshold`` of steady.

    After switch-off the ratio first keeps rising (molecules still in flight)
    and then decays, so there is exactly one downward crossing. It is bracketed
    by doubling and then bisected.
    """
    require(r > 0, f"distance must be > 0, got {r}")
    require(t0 > 0, f"t0 must be > 0, got {t0}")
    _check_threshold(threshold)

    def ratio(s):
        return arrival_fraction(r, t0 + s, ch) - arrival_fraction(r, s, ch)

    if ratio(0.0) <= threshold:
        return 0.0
    hi = r * r / (4.0 * ch.D)
    for _ in range(_DEFAULTS.MAX_BRACKET_DOUBLINGS):
        if ratio(hi) <= threshold:
            break
        hi *= 2.0
    else:
        raise BracketError(f"fall ratio never drops to {threshold} (r={r}, t0={t0})")
    return bisect(ratio, 0.0, hi, target=threshold, tol=tol)


def reception_delay(A: float, k: KineticParams, multiple: float = _DEFAULTS.DELAY_MULTIPLE) -> float:
    """multiple * (T1 + T2 + T3) in minutes: entrapment, then the two expression stages."""
    require(A > 0, f"concentration must be > 0, got {A}")
    t1 = binding_time_constant(A, k)
    return multiple * (t1 + 1.0 / k.b1 + 1.0 / k.b2)


def link_delays(r: float, ch: ChannelParams, k: KineticParams,
                rise_threshold: float = _DEFAULTS.RISE_THRESHOLD,
                fall_threshold: float = _DEFAULTS.FALL_THRESHOLD,
                reception_concentration: float = _DEFAULTS.RECEPTION_CONCENTRATION_NM) -> DelayBreakdown:
    t_rise = rise_time(r, ch, rise_threshold)
    t_reception = reception_delay(reception_concentration, k)
    t0 = t_rise + t_reception * SECONDS_PER_MINUTE
    t_fall = fall_time(r, t0, ch, fall_threshold)
    total = t_rise + t_reception * SECONDS_PER_MINUTE + t_fall
    log.debug("[TIMING] r=%.3g cm: rise %.4g s, reception %.4g min, fall %.4g s", r, t_rise, t_reception, t_fall)
    return DelayBreakdown(
        t_rise=t_rise, t_fall=t_fall, t_reception=t_reception, t_total=total,
        rise_threshold=rise_threshold, fall_threshold=fall_threshold,
    )


def bits_per_hour(capacity_bits: float, delays: DelayBreakdown) -> float:
    require(capacity_bits >= 0, f"capacity must be >= 0, got {capacity_bits}")
    require(delays.t_total > 0 and math.isfinite(delays.t_total), f"total delay must be positive, got {delays.t_total}")
    return capacity_bits / delays.t_total_hours
