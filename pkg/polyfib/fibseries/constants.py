# polyfib/fibseries/constants.py
"""
Catalog of named closed-form constants for Fibonacci/Lucas series.

Each entry knows its closed form in pi, log(alpha), sqrt5, log 2 and zeta(3),
its free parameters, and the SeriesSpec of the series it equals, so the
registry can evaluate the series side by an independent method.
"""

import logging
from typing import Any, Callable, Dict, Optional, Tuple

from mpmath import mp, mpf

from ..bernoulli import zeta_int
from ..seqcore import current_constants, fib, lucas
from ..utils import DomainError, UnknownIdentityError, precision_aware
from .spec import Method, SeriesSpec, SeriesValue, Weight

logger = logging.getLogger(__name__)


class NamedConstant:
    """
    One catalog entry.

    Attributes
    ----------
    name : str
    statement : str
        The identity in plain text.
    params : dict
        Parameter names with their default values.
    """

    __slots__ = ('name', 'statement', 'params', '_value', '_series', '_check')

    def __init__(self, name: str, statement: str, value: Callable, series: Callable,
                 params: Optional[Dict[str, int]] = None, check: Optional[Callable] = None):
        self.name = name
        self.statement = statement
        self.params = dict(params or {})
        self._value = value
        self._series = series
        self._check = check

    def bind(self, **params) -> Dict[str, int]:
        unknown = set(params) - set(self.params)
        if unknown:
            raise ValueError(f"{self.name} takes parameters {sorted(self.params)}, got {sorted(unknown)}")
        bound = {**self.params, **{k: int(v) for k, v in params.items()}}
        if self._check is not None:
            self._check(**bound)
        return bound

    def value(self, **params) -> mpf:
        """The closed form at the active precision."""
        bound = self.bind(**params)
        c = current_constants()
        return self._value(mp.pi, c.log_alpha, c.sqrt5, **bound)

    def series(self, **params) -> SeriesSpec:
        """The series this constant equals."""
        return self._series(**self.bind(**params))


def _even_r(r: int) -> None:
    if r % 2:
        raise DomainError(f"the reciprocal-power Lucas series needs r even, got r = {r}")


def _alt(family: str, r: int, s: int, k: int) -> Callable:
    return lambda **_: SeriesSpec(family, r, s, k, weight=Weight.ALTERNATING)


def _entry(name, statement, value, series, params=None, check=None):
    return name, NamedConstant(name, statement, value, series, params, check)


NAMED_CONSTANTS: Dict[str, NamedConstant] = dict((
    _entry('alt_fib_shifted_dilog',
           'sum (-1)^(j-1) F_{j+s} / j^2 = F_s log^2 alpha + pi^2 sqrt5 / 50 L_s',
           lambda pi, la, sqrt5, s: fib(s) * la ** 2 + pi ** 2 * sqrt5 / 50 * lucas(s),
           lambda s: SeriesSpec('F', 1, s, 2, weight=Weight.ALTERNATING),
           {'s': 0}),
    _entry('alt_lucas_shifted_dilog',
           'sum (-1)^(j-1) L_{j+s} / j^2 = L_s log^2 alpha + pi^2 sqrt5 / 10 F_s',
           lambda pi, la, sqrt5, s: lucas(s) * la ** 2 + pi ** 2 * sqrt5 / 10 * fib(s),
           lambda s: SeriesSpec('L', 1, s, 2, weight=Weight.ALTERNATING),
           {'s': 0}),
    _entry('alt_lucas_2j_dilog',
           'sum (-1)^(j-1) L_{2j} / j^2 = pi^2/6 + 2 log^2 alpha',
           lambda pi, la, sqrt5: pi ** 2 / 6 + 2 * la ** 2,
           _alt('L', 2, 0, 2)),
    _entry('alt_lucas_3j_dilog',
           'sum (-1)^(j-1) L_{3j} / j^2 = pi^2/12 + 6 log^2 alpha',
           lambda pi, la, sqrt5: pi ** 2 / 12 + 6 * la ** 2,
           _alt('L', 3, 0, 2)),
    _entry('lucas_half_power_dilog',
           'sum L_j / (2^j j^2) = pi^2/12 + 2 log^2 alpha - log^2 2',
           lambda pi, la, sqrt5: pi ** 2 / 12 + 2 * la ** 2 - mp.log(2) ** 2,
           lambda: SeriesSpec('L', 1, 0, 2, z='1/2')),
    _entry('lucas_reciprocal_power',
           'sum L_{rj} / (L_r^j j^2) = pi^2/6 + r^2 log^2 alpha - log^2 L_r, r even',
           lambda pi, la, sqrt5, r: pi ** 2 / 6 + r * r * la ** 2 - mp.log(lucas(r)) ** 2,
           lambda r: SeriesSpec('L', r, 0, 2, z=f"1/{lucas(r)}"),
           {'r': 2}, _even_r),
    _entry('lucas_reciprocal_power_product',
           'sum L_{rj} / (L_r^j j^2) = pi^2/6 - log(alpha^r / L_r) log(beta^r / L_r), r even',
           lambda pi, la, sqrt5, r: pi ** 2 / 6 - (r * la - mp.log(lucas(r))) * (-r * la - mp.log(lucas(r))),
           lambda r: SeriesSpec('L', r, 0, 2, z=f"1/{lucas(r)}"),
           {'r': 2}, _even_r),
    _entry('alt_lucas_trilog',
           'sum (-1)^(j-1) L_j / j^3 = (pi^2 log alpha - zeta(3)) / 5',
           lambda pi, la, sqrt5: (pi ** 2 * la - zeta_int(3)) / 5,
           _alt('L', 1, 0, 3)),
    _entry('fib2j_fib4j_k4',
           'sum (-1)^(j-1) F_{2j} F_{4j} / j^4 = 8/15 pi^2 log^2 alpha + 32/3 log^4 alpha',
           lambda pi, la, sqrt5: 8 * pi ** 2 * la ** 2 / 15 + 32 * la ** 4 / 3,
           _alt('FF', 2, 4, 4)),
    _entry('fib2j_fib4j_k6',
           'sum (-1)^(j-1) F_{2j} F_{4j} / j^6 = 14/225 pi^4 log^2 alpha + 16/9 pi^2 log^4 alpha '
           '+ 2912/225 log^6 alpha',
           lambda pi, la, sqrt5: (14 * pi ** 4 * la ** 2 / 225 + 16 * pi ** 2 * la ** 4 / 9
                                  + 2912 * la ** 6 / 225),
           _alt('FF', 2, 4, 6)),
    _entry('fibsq_2j_k2',
           'sum (-1)^(j-1) F_{2j}^2 / j^2 = 8/5 log^2 alpha',
           lambda pi, la, sqrt5: 8 * la ** 2 / 5,
           _alt('FF', 2, 2, 2)),
    _entry('fibsq_4j_k6',
           'sum (-1)^(j-1) F_{4j}^2 / j^6 = 4/225 log^2 alpha (7 pi^4 + 320 pi^2 log^2 alpha + 4096 log^4 alpha)',
           lambda pi, la, sqrt5: 4 * la ** 2 / 225 * (7 * pi ** 4 + 320 * pi ** 2 * la ** 2 + 4096 * la ** 4),
           _alt('FF', 4, 4, 6)),
    _entry('fibsq_j_k6',
           'sum (-1)^(j-1) F_j^2 / j^6 = pi^6/1200 + 7/900 pi^4 log^2 alpha + 1/45 pi^2 log^4 alpha '
           '+ 4/225 log^6 alpha',
           lambda pi, la, sqrt5: (pi ** 6 / 1200 + 7 * pi ** 4 * la ** 2 / 900 + pi ** 2 * la ** 4 / 45
                                  + 4 * la ** 6 / 225),
           _alt('FF', 1, 1, 6)),
    # the log^2 alpha coefficient is 7/100; 7/900 (as in F_j^2) does not match the series
    _entry('fibsq_3j_k6',
           'sum (-1)^(j-1) F_{3j}^2 / j^6 = pi^6/1200 + 7/100 pi^4 log^2 alpha + 9/5 pi^2 log^4 alpha '
           '+ 324/25 log^6 alpha',
           lambda pi, la, sqrt5: (pi ** 6 / 1200 + 7 * pi ** 4 * la ** 2 / 100 + 9 * pi ** 2 * la ** 4 / 5
                                  + 324 * la ** 6 / 25),
           _alt('FF', 3, 3, 6)),
    _entry('fib2j_lucas4j_k1',
           'sum (-1)^(j-1) F_{2j} L_{4j} / j = 4 log alpha / sqrt5',
           lambda pi, la, sqrt5: 4 * la / sqrt5,
           _alt('FL', 2, 4, 1)),
    _entry('fib2j_lucas4j_k3',
           'sum (-1)^(j-1) F_{2j} L_{4j} / j^3 = 2/(3 sqrt5) (pi^2 + 52 log^2 alpha) log alpha',
           lambda pi, la, sqrt5: 2 / (3 * sqrt5) * (pi ** 2 + 52 * la ** 2) * la,
           _alt('FL', 2, 4, 3)),
    _entry('lucas2j_lucas4j_k2',
           'sum (-1)^(j-1) L_{2j} L_{4j} / j^2 = pi^2/3 + 20 log^2 alpha',
           lambda pi, la, sqrt5: pi ** 2 / 3 + 20 * la ** 2,
           _alt('LL', 2, 4, 2)),
    _entry('lucas2j_lucas4j_k4',
           'sum (-1)^(j-1) L_{2j} L_{4j} / j^4 = 7/180 pi^4 + 10/3 pi^2 log^2 alpha + 164/3 log^4 alpha',
           lambda pi, la, sqrt5: 7 * pi ** 4 / 180 + 10 * pi ** 2 * la ** 2 / 3 + 164 * la ** 4 / 3,
           _alt('LL', 2, 4, 4)),
    _entry('lucassq_2j_k2',
           'sum (-1)^(j-1) L_{2j}^2 / j^2 = pi^2/3 + 8 log^2 alpha',
           lambda pi, la, sqrt5: pi ** 2 / 3 + 8 * la ** 2,
           _alt('LL', 2, 2, 2)),
    _entry('lucassq_2j_k4',
           'sum (-1)^(j-1) L_{2j}^2 / j^4 = 7/180 pi^4 + 4/3 pi^2 log^2 alpha + 32/3 log^4 alpha',
           lambda pi, la, sqrt5: 7 * pi ** 4 / 180 + 4 * pi ** 2 * la ** 2 / 3 + 32 * la ** 4 / 3,
           _alt('LL', 2, 2, 4)),
    _entry('lucassq_j_k6',
           'sum (-1)^(j-1) L_j^2 / j^6 = -pi^6/15120 + 7/180 pi^4 log^2 alpha + 1/9 pi^2 log^4 alpha '
           '+ 4/45 log^6 alpha',
           lambda pi, la, sqrt5: (-pi ** 6 / 15120 + 7 * pi ** 4 * la ** 2 / 180 + pi ** 2 * la ** 4 / 9
                                  + 4 * la ** 6 / 45),
           _alt('LL', 1, 1, 6)),
))


def get_constant(name: str) -> NamedConstant:
    try:
        return NAMED_CONSTANTS[name.lower()]
    except KeyError:
        raise UnknownIdentityError(f"Unknown named constant {name!r}. "
                                   f"Available: {', '.join(NAMED_CONSTANTS)}")


def constant_ids() -> Tuple[str, ...]:
    return tuple(NAMED_CONSTANTS)


@precision_aware
def named_constant(name: str, **params: Any) -> SeriesValue:
    """
    Evaluate a catalog constant.

    Example
    -------
    ::

        named_constant('lucas_reciprocal_power', r=2, prec=128)   # pi^2/6 + 4 log^2 alpha - log^2 3
        named_constant('alt_lucas_trilog')                         # (pi^2 log alpha - zeta(3)) / 5

    Raises
    ------
    UnknownIdentityError
        For an id not in the catalog.
    """
    entry = get_constant(name)
    spec = entry.series(**params)
    return SeriesValue(entry.value(**params), Method.NAMED_CONSTANT, 0, spec, not spec.in_region())
