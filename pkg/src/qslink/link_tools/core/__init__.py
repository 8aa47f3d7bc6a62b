# src/qslink/link_tools/core/__init__.py

from .core import (
    BracketError,
    ConfigError,
    ConvergenceError,
    DegenerateRateError,
    DomainError,
    LinkError,
    SaturationError,
    Tolerance,
    bisect,
    erf,
    erfc,
    gaussian_cdf,
    inverse_erfc,
    reaches,
    require,
)
from .core_config import CoreConfig

__all__ = [
    'BracketError', 'ConfigError', 'ConvergenceError', 'DegenerateRateError',
    'DomainError', 'LinkError', 'SaturationError', 'Tolerance', 'CoreConfig',
    'bisect', 'erf', 'erfc', 'gaussian_cdf', 'inverse_erfc', 'reaches', 'require',
]
