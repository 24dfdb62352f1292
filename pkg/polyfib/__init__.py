"""
polyfib - Fibonacci/Lucas series and polylogarithms at high precision

A library and command-line tool that provides:
- Exact Fibonacci/Lucas numbers, Bernoulli numbers and Bernoulli polynomials
- Integer-order polylogarithms Li_k(z) with their real-axis continuation
- Weighted Fibonacci/Lucas series by direct summation, polylog combinations,
  Bernoulli-polynomial closed forms and an Abel oracle for divergent series
- A registry of closed-form identities verified by independent methods
- Writers for CSV, JSON and text-table reports

Basic usage::

    import polyfib
    from polyfib.fibseries import SeriesSpec, evaluate

    spec = SeriesSpec('L', r=2, k=2, weight='alternating')
    evaluate(spec, 'bernoulli', prec=192)      # pi^2/6 + 2 log^2 alpha

    report = polyfib.verify('lucas_half_power_dilog', prec=128)
    print(report.status)
"""

__version__ = '0.3.0'

from .config import get_setting, set_config_file
from .logging_utils import errors_logged, failed_identities, setup_logging
from .seqcore import fib, lucas
from .bernoulli import bernoulli_number, bernoulli_poly, zeta_int
from .polylog import li, special_value
from .fibseries import SeriesSpec, SeriesValue, evaluate, named_constant
from .harness import registry, verify, verify_all
from . import writers

__all__ = [
    'set_config_file',
    'get_setting',
    'setup_logging',
    'errors_logged',
    'failed_identities',
    'fib',
    'lucas',
    'bernoulli_number',
    'bernoulli_poly',
    'zeta_int',
    'li',
    'special_value',
    'SeriesSpec',
    'SeriesValue',
    'evaluate',
    'named_constant',
    'registry',
    'verify',
    'verify_all',
    'writers',
]
