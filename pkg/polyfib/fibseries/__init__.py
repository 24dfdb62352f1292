"""
Weighted Fibonacci/Lucas series: direct summation, closed forms, named
constants and the Abel oracle for regularized values.
"""

from .spec import Family, Method, Part, SeriesSpec, SeriesValue, Weight
from .direct import direct_sum
from .closed_forms import (
    METHODS, bernoulli_form, decompose, evaluate, generating_function, log_series_form,
    polylog_form, quarter_series_form, trig_series_form,
)
from .constants import NAMED_CONSTANTS, NamedConstant, constant_ids, get_constant, named_constant
from .abel import abel_regularized_sum

__all__ = [
    'Family', 'Method', 'Part', 'SeriesSpec', 'SeriesValue', 'Weight',
    'direct_sum',
    'METHODS', 'bernoulli_form', 'decompose', 'evaluate', 'generating_function', 'log_series_form',
    'polylog_form', 'quarter_series_form', 'trig_series_form',
    'NAMED_CONSTANTS', 'NamedConstant', 'constant_ids', 'get_constant', 'named_constant',
    'abel_regularized_sum',
]
