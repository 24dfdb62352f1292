# polyfib/polylog/special.py
"""
Golden-ratio special values of Li_2 and Li_3.

Every catalog entry pairs a combination of polylogarithms at golden-ratio
arguments with its closed form in pi, zeta(3), log(alpha) and log(2). Arguments
are written as tokens (``-alpha``, ``beta^2``, ``alpha/2``, ``1/3``) so the
same notation serves the identity registry.
"""

import logging
import re
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

from mpmath import mp, mpf

from ..bernoulli import zeta_int
from ..seqcore import current_constants, power_split
from ..utils import UnknownIdentityError, parse_rational, precision_aware, rational_to_mpf
from .core import Path, PolylogValue, Side, li, li_inversion, li_log_expansion, li_series

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r'^(?P<sign>-)?(?P<base>alpha|beta)(?:\^(?P<power>-?\d+))?(?:/(?P<den>\d+))?$')

Term = Tuple[Fraction, int, str]


def golden_argument(token: str):
    """
    Value of an argument token at the active precision.

    ``[-]alpha|beta[^n][/d]`` uses the exact alpha^n / beta^n split; anything
    else must be a rational and comes back as an exact Fraction.

    Examples
    --------
    ``'-alpha'``, ``'beta^2'``, ``'-beta^3'``, ``'alpha/2'``, ``'1/3'``
    """
    text = str(token).strip().replace(' ', '')
    m = _TOKEN.match(text)
    if not m:
        return parse_rational(text)
    power = int(m.group('power') or 1)
    alpha_n, beta_n = power_split(power, current_constants())
    value = alpha_n if m.group('base') == 'alpha' else beta_n
    if m.group('den'):
        value = value / int(m.group('den'))
    return -value if m.group('sign') else value


_FORCED_PATHS: Dict[str, Callable] = {
    Path.DIRECT_SERIES: lambda k, z, side: li_series(k, z),
    Path.LOG_EXPANSION: lambda k, z, side: li_log_expansion(k, z, side),
    Path.INVERSION: lambda k, z, side: li_inversion(k, z, side),
}


@precision_aware
def li_sum(terms: Sequence[Term], path: Optional[str] = None, side: str = Side.UPPER) -> PolylogValue:
    """
    sum coef * Li_k(arg) over (coef, k, token) terms.

    ``path`` forces one evaluation path for every term (direct_series,
    log_expansion or inversion); None lets :func:`li` choose. The returned path
    is the forced one, or ``'mixed'`` when the dispatcher chose differently per
    term.
    """
    if path is not None and path not in _FORCED_PATHS:
        raise ValueError(f"Cannot force path {path!r}. Expected one of {', '.join(_FORCED_PATHS)}")
    total = mpf(0)
    bound = mpf(0)
    paths = set()
    for coef, k, token in terms:
        z = golden_argument(token)
        result = li(k, z, side) if path is None else _FORCED_PATHS[path](k, z, side)
        total += rational_to_mpf(coef) * result.value
        bound += abs(rational_to_mpf(coef)) * result.tail_bound
        paths.add(result.path)
    label = paths.pop() if len(paths) == 1 else 'mixed'
    return PolylogValue(total, label, bound)


class SpecialValue:
    """A polylog combination at golden-ratio arguments and its closed form."""

    __slots__ = ('name', 'statement', 'terms', '_closed')

    def __init__(self, name: str, statement: str, terms: Sequence[Term], closed: Callable):
        self.name = name
        self.statement = statement
        self.terms = tuple((Fraction(c), k, t) for c, k, t in terms)
        self._closed = closed

    def closed_form(self) -> mpf:
        c = current_constants()
        return self._closed(mp.pi, c.log_alpha)


def _entry(name, statement, terms, closed):
    return name, SpecialValue(name, statement, terms, closed)


SPECIAL_VALUES: Dict[str, SpecialValue] = dict((
    _entry('li2_minus_beta', 'Li2(-beta) = pi^2/10 - log^2 alpha',
           [(1, 2, '-beta')],
           lambda pi, la: pi ** 2 / 10 - la ** 2),
    _entry('li2_beta', 'Li2(beta) = -pi^2/15 + 1/2 log^2 alpha',
           [(1, 2, 'beta')],
           lambda pi, la: -pi ** 2 / 15 + la ** 2 / 2),
    _entry('li2_beta_sq', 'Li2(beta^2) = pi^2/15 - log^2 alpha',
           [(1, 2, 'beta^2')],
           lambda pi, la: pi ** 2 / 15 - la ** 2),
    _entry('li2_minus_alpha', 'Li2(-alpha) = -pi^2/10 - log^2 alpha',
           [(1, 2, '-alpha')],
           lambda pi, la: -pi ** 2 / 10 - la ** 2),
    _entry('li2_beta_plus_beta_sq', 'Li2(beta) + Li2(beta^2) = -1/2 log^2 alpha',
           [(1, 2, 'beta'), (1, 2, 'beta^2')],
           lambda pi, la: -la ** 2 / 2),
    _entry('li2_minus_beta_minus_beta', 'Li2(-beta) - Li2(beta) = pi^2/6 - 3/2 log^2 alpha',
           [(1, 2, '-beta'), (-1, 2, 'beta')],
           lambda pi, la: pi ** 2 / 6 - 3 * la ** 2 / 2),
    _entry('li2_sum_minus_alpha_minus_beta', 'Li2(-alpha) + Li2(-beta) = -2 log^2 alpha',
           [(1, 2, '-alpha'), (1, 2, '-beta')],
           lambda pi, la: -2 * la ** 2),
    _entry('li2_diff_minus_alpha_minus_beta', 'Li2(-alpha) - Li2(-beta) = -pi^2/5',
           [(1, 2, '-alpha'), (-1, 2, '-beta')],
           lambda pi, la: -pi ** 2 / 5),
    _entry('li2_sum_minus_alpha_sq_minus_beta_sq', 'Li2(-alpha^2) + Li2(-beta^2) = -pi^2/6 - 2 log^2 alpha',
           [(1, 2, '-alpha^2'), (1, 2, '-beta^2')],
           lambda pi, la: -pi ** 2 / 6 - 2 * la ** 2),
    _entry('li2_sum_minus_alpha_cube_minus_beta_cube',
           'Li2(-alpha^3) + Li2(-beta^3) = -pi^2/12 - 6 log^2 alpha',
           [(1, 2, '-alpha^3'), (1, 2, '-beta^3')],
           lambda pi, la: -pi ** 2 / 12 - 6 * la ** 2),
    _entry('li2_sum_half_alpha_half_beta',
           'Li2(alpha/2) + Li2(beta/2) = pi^2/12 + 2 log^2 alpha - log^2 2',
           [(1, 2, 'alpha/2'), (1, 2, 'beta/2')],
           lambda pi, la: pi ** 2 / 12 + 2 * la ** 2 - mp.log(2) ** 2),
    _entry('li3_beta_sq', 'Li3(beta^2) = 4/5 zeta(3) - 2 pi^2/15 log alpha + 2/3 log^3 alpha',
           [(1, 3, 'beta^2')],
           lambda pi, la: 4 * zeta_int(3) / 5 - 2 * pi ** 2 / 15 * la + 2 * la ** 3 / 3),
    _entry('li3_beta_minus_minus_alpha', 'Li3(beta) - Li3(-alpha) = pi^2/6 log alpha + 1/6 log^3 alpha',
           [(1, 3, 'beta'), (-1, 3, '-alpha')],
           lambda pi, la: pi ** 2 / 6 * la + la ** 3 / 6),
    _entry('li3_sum_minus_alpha_minus_beta',
           'Li3(-alpha) + Li3(-beta) = 1/5 zeta(3) - pi^2/5 log alpha',
           [(1, 3, '-alpha'), (1, 3, '-beta')],
           lambda pi, la: zeta_int(3) / 5 - pi ** 2 / 5 * la),
))


def get_special(name: str) -> SpecialValue:
    try:
        return SPECIAL_VALUES[name.lower()]
    except KeyError:
        raise UnknownIdentityError(f"Unknown special value {name!r}. "
                                   f"Available: {', '.join(SPECIAL_VALUES)}")


@precision_aware
def special_value(name: str) -> mpf:
    """
    Closed form of a named golden-ratio polylog value.

    Example
    -------
    ::

        special_value('li2_minus_beta', prec=128)   # pi^2/10 - log^2 alpha
    """
    return get_special(name).closed_form()


@precision_aware
def special_value_polylog(name: str, path: Optional[str] = None) -> PolylogValue:
    """The polylog side of a named special value, optionally on a forced path."""
    return li_sum(get_special(name).terms, path=path)
