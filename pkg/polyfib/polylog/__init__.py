# polyfib/polylog/__init__.py
"""
Integer-order polylogarithms, their functional equations and golden-ratio
special values.
"""

from .core import (
    Path, Side, PolylogQuery, PolylogValue,
    li, li1, li1_polar_parts, li_inversion, li_log_expansion, li_nonpositive, li_series,
    re_li_on_imaginary_axis,
)
from .functional import (
    DILOG_EQUATIONS, FUNCTIONAL_DOMAINS, TRILOG_EQUATIONS, FunctionalEquation,
    dilog_functional_equation, trilog_functional_equation,
)
from .special import (
    SPECIAL_VALUES, SpecialValue, get_special, golden_argument, li_sum,
    special_value, special_value_polylog,
)

__all__ = [
    'Path', 'Side', 'PolylogQuery', 'PolylogValue',
    'li', 'li1', 'li1_polar_parts', 'li_inversion', 'li_log_expansion', 'li_nonpositive', 'li_series',
    're_li_on_imaginary_axis',
    'DILOG_EQUATIONS', 'FUNCTIONAL_DOMAINS', 'TRILOG_EQUATIONS', 'FunctionalEquation',
    'dilog_functional_equation', 'trilog_functional_equation',
    'SPECIAL_VALUES', 'SpecialValue', 'get_special', 'golden_argument', 'li_sum',
    'special_value', 'special_value_polylog',
]
