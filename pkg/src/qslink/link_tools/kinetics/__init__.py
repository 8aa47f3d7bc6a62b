# src/qslink/link_tools/kinetics/__init__.py

from .kinetics import (
    KineticParams,
    binding_time_constant,
    binding_transient,
    cascade_distinct_poles,
    concentration_for_probability,
    expression_transient,
    gfp_steady,
    steady_binding_probability,
    transient_table,
)
from .kinetics_config import KineticsConfig

__all__ = [
    'KineticParams', 'KineticsConfig', 'binding_time_constant', 'binding_transient',
    'cascade_distinct_poles', 'concentration_for_probability', 'expression_transient',
    'gfp_steady', 'steady_binding_probability', 'transient_table',
]
