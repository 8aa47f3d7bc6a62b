# src/qslink/link_tools/montecarlo/__init__.py

from .montecarlo import (
    LinkSamples,
    SimConfig,
    SymbolErrorEstimate,
    empirical_moments,
    empirical_symbol_error,
    simulate_link,
)
from .montecarlo_config import MonteCarloConfig

__all__ = [
    'LinkSamples', 'MonteCarloConfig', 'SimConfig', 'SymbolErrorEstimate',
    'empirical_moments', 'empirical_symbol_error', 'simulate_link',
]
