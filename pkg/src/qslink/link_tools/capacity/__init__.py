# src/qslink/link_tools/capacity/__init__.py

from .capacity import (
    CapacityPoint,
    CapacityResult,
    DiscreteChannel,
    blahut_arimoto,
    build_discrete_channel,
    capacity_vs_amax,
    capacity_vs_sigma0,
    mutual_information,
    output_std,
    p_max_from_amax,
)
from .capacity_config import CapacityConfig

__all__ = [
    'CapacityConfig', 'CapacityPoint', 'CapacityResult', 'DiscreteChannel',
    'blahut_arimoto', 'build_discrete_channel', 'capacity_vs_amax',
    'capacity_vs_sigma0', 'mutual_information', 'output_std', 'p_max_from_amax',
]
