# src/qslink/link_tools/transmitter/__init__.py

from .transmitter_config import TransmitterConfig
from .transmitter import (
    FIRST_ORDER_LIMIT,
    NodeParams,
    OutputMoments,
    noiseless_entrapment,
    output_rate_stats,
    relative_output_variance,
    transmitter_moments,
)

__all__ = [
    'FIRST_ORDER_LIMIT', 'NodeParams', 'TransmitterConfig', 'OutputMoments', 'noiseless_entrapment',
    'output_rate_stats', 'relative_output_variance', 'transmitter_moments',
]
