"""
Out-of-time-order correlators of the random-angle QAOA ensemble.
"""

from .otoc import (
    TraceMethod,
    OtocConfig,
    OtocValue,
    OtocPoint,
    haar_otoc,
    otoc_in_range,
    otoc_single,
    otoc_instance,
    otoc_ensemble,
)

__all__ = [
    'TraceMethod',
    'OtocConfig',
    'OtocValue',
    'OtocPoint',
    'haar_otoc',
    'otoc_in_range',
    'otoc_single',
    'otoc_instance',
    'otoc_ensemble',
]
