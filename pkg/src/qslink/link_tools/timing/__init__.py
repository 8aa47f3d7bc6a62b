# src/qslink/link_tools/timing/__init__.py

from .timing import (
    SECONDS_PER_HOUR,
    SECONDS_PER_MINUTE,
    DelayBreakdown,
    bits_per_hour,
    fall_time,
    link_delays,
    reception_delay,
    rise_ratio,
    rise_time,
)
from .timing_config import TimingConfig

__all__ = [
    'SECONDS_PER_HOUR', 'SECONDS_PER_MINUTE', 'DelayBreakdown', 'TimingConfig',
    'bits_per_hour', 'fall_time', 'link_delays', 'reception_delay',
    'rise_ratio', 'rise_time',
]
