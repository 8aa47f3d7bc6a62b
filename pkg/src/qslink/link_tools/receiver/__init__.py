# src/qslink/link_tools/receiver/__init__.py

from .receiver import (
    EntrapmentExpansion,
    ExactVariance,
    ReceiverMoments,
    VarianceSplit,
    exact_receiver_variance,
    receiver_entrapment,
    receiver_moments,
    sigma0_sq,
    snr_ratio,
    variance_split,
)

__all__ = [
    'EntrapmentExpansion', 'ExactVariance', 'ReceiverMoments', 'VarianceSplit',
    'exact_receiver_variance', 'receiver_entrapment', 'receiver_moments',
    'sigma0_sq', 'snr_ratio', 'variance_split',
]
