# src/qslink/link_tools/modulation/__init__.py

from .modulation import (
    MaryPoint,
    MaryResult,
    MarySpec,
    error_vs_amax,
    mary_rate,
    symbol_error_probs,
    total_error,
)
from .modulation_config import ModulationConfig

__all__ = [
    'MaryPoint', 'MaryResult', 'MarySpec', 'ModulationConfig', 'error_vs_amax',
    'mary_rate', 'symbol_error_probs', 'total_error',
]
