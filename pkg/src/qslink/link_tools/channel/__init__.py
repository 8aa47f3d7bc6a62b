# src/qslink/link_tools/channel/__init__.py

from .channel import (
    ChannelParams,
    ReceiverConcentrationStats,
    arrival_fraction,
    channel_table,
    cm_to_um,
    green_impulse,
    pulse_convolution,
    receiver_concentration_stats,
    required_stimulus,
    saturation_concentration,
    steady_concentration,
    step_response,
    um_to_cm,
)
from .channel_config import ChannelConfig

__all__ = [
    'ChannelConfig', 'ChannelParams', 'ReceiverConcentrationStats', 'arrival_fraction',
    'channel_table', 'cm_to_um', 'green_impulse', 'pulse_convolution',
    'receiver_concentration_stats', 'required_stimulus', 'saturation_concentration',
    'steady_concentration', 'step_response', 'um_to_cm',
]
