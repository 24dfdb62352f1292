# polyfib/polylog/functional.py
"""
Functional equations of the dilogarithm and trilogarithm.

Each equation knows its domain, how to evaluate both sides through
:func:`polyfib.polylog.core.li`, and how to sample in-domain points for
property tests. Rational arguments stay exact until they reach ``li``.
"""

import logging
import math
import random
from fractions import Fraction
from typing import Callable, Dict, Tuple

from mpmath import mp, mpf

from ..utils import DomainError, UnknownIdentityError, precision_aware, to_mp
from .core import li

logger = logging.getLogger(__name__)


def _li2(x) -> mpf:
    return li(2, x).value


def _li3(x) -> mpf:
    return li(3, x).value


def _log(x) -> mpf:
    return mp.log(to_mp(x))


def _rand(rng: random.Random, low: float, high: float) -> Fraction:
    """Rational strictly inside (low, high) with a modest denominator."""
    den = rng.randint(7, 997)
    return Fraction(rng.randint(math.floor(low * den) + 1, math.ceil(high * den) - 1), den)


class FunctionalEquation:
    """
    One functional equation: ``lhs(*args) == rhs(*args)`` on ``domain``.

    Attributes
    ----------
    name : str
    order : int
        2 for dilogarithm, 3 for trilogarithm equations.
    arity : int
        Number of free arguments.
    statement : str
        The equation in plain text.
    """

    __slots__ = ('name', 'order', 'arity', 'statement', '_domain', '_lhs', '_rhs', '_sampler')

    def __init__(self, name: str, order: int, arity: int, statement: str,
                 domain: Callable[..., bool], lhs: Callable, rhs: Callable,
                 sampler: Callable[[random.Random], Tuple]):
        self.name = name
        self.order = order
        self.arity = arity
        self.statement = statement
        self._domain = domain
        self._lhs = lhs
        self._rhs = rhs
        self._sampler = sampler

    def check(self, *args) -> None:
        if len(args) != self.arity:
            raise DomainError(f"{self.name} takes {self.arity} argument(s), got {len(args)}")
        try:
            ok = self._domain(*args)
        except ZeroDivisionError:
            ok = False
        if not ok:
            raise DomainError(f"{self.name}: arguments {args} outside the domain of {self.statement}")

    def sides(self, *args) -> Tuple[mpf, mpf]:
        """(LHS, RHS) at the active precision."""
        self.check(*args)
        return self._lhs(*args), self._rhs(*args)

    def residual(self, *args) -> mpf:
        lhs, rhs = self.sides(*args)
        return abs(lhs - rhs)

    def sample(self, rng: random.Random) -> Tuple:
        """A random in-domain argument tuple of exact rationals."""
        while True:
            args = self._sampler(rng)
            try:
                self.check(*args)
            except DomainError:
                continue
            return args


def _landen_sample(rng):
    return (_rand(rng, -5, 1),)


def _pair_sample(rng):
    return _rand(rng, -3, 1), _rand(rng, -3, 1)


DILOG_EQUATIONS: Dict[str, FunctionalEquation] = {eq.name: eq for eq in (
    FunctionalEquation(
        'landen', 2, 1,
        'Li2(x) + Li2(x/(x-1)) = -1/2 log^2(1-x), x < 1',
        lambda x: x < 1,
        lambda x: _li2(x) + _li2(x / (x - 1)),
        lambda x: -_log(1 - x) ** 2 / 2,
        _landen_sample),
    FunctionalEquation(
        'reciprocal_shift', 2, 1,
        'Li2(1/(1+x)) - Li2(-x) = pi^2/6 - 1/2 log(1+x) log((1+x)/x^2), x > 0',
        lambda x: x > 0,
        lambda x: _li2(1 / (1 + x)) - _li2(-x),
        lambda x: mp.pi ** 2 / 6 - _log(1 + x) * _log((1 + x) / (x * x)) / 2,
        lambda rng: (_rand(rng, 0, 6),)),
    FunctionalEquation(
        'duplication', 2, 1,
        'Li2(x) + Li2(-x) = 1/2 Li2(x^2), -1 < x < 1',
        lambda x: -1 < x < 1,
        lambda x: _li2(x) + _li2(-x),
        lambda x: _li2(x * x) / 2,
        lambda rng: (_rand(rng, -1, 1),)),
    FunctionalEquation(
        'inversion', 2, 1,
        'Li2(-x) + Li2(-1/x) = -pi^2/6 - 1/2 log^2 x, x > 0',
        lambda x: x > 0,
        lambda x: _li2(-x) + _li2(-1 / x),
        lambda x: -mp.pi ** 2 / 6 - _log(x) ** 2 / 2,
        lambda rng: (_rand(rng, 0, 8),)),
    FunctionalEquation(
        'reflection', 2, 1,
        'Li2(x) + Li2(1-x) = pi^2/6 - log x log(1-x), 0 < x < 1',
        lambda x: 0 < x < 1,
        lambda x: _li2(x) + _li2(1 - x),
        lambda x: mp.pi ** 2 / 6 - _log(x) * _log(1 - x),
        lambda rng: (_rand(rng, 0, 1),)),
    FunctionalEquation(
        'product', 2, 2,
        'Li2(xy) = Li2(x) + Li2(y) - Li2(x(1-y)/(1-xy)) - Li2(y(1-x)/(1-xy)) '
        '- log((1-x)/(1-xy)) log((1-y)/(1-xy)), x < 1, y < 1, xy < 1',
        lambda x, y: x < 1 and y < 1 and x * y < 1,
        lambda x, y: _li2(x * y),
        lambda x, y: (_li2(x) + _li2(y)
                      - _li2(x * (1 - y) / (1 - x * y)) - _li2(y * (1 - x) / (1 - x * y))
                      - _log((1 - x) / (1 - x * y)) * _log((1 - y) / (1 - x * y))),
        _pair_sample),
    FunctionalEquation(
        'ratio', 2, 2,
        'Li2(x/(1-x) * y/(1-y)) = Li2(x/(1-y)) + Li2(y/(1-x)) - Li2(x) - Li2(y) '
        '- log(1-x) log(1-y), x < 1, y < 1, x + y < 1',
        lambda x, y: x < 1 and y < 1 and x + y < 1,
        lambda x, y: _li2(x / (1 - x) * (y / (1 - y))),
        lambda x, y: (_li2(x / (1 - y)) + _li2(y / (1 - x)) - _li2(x) - _li2(y)
                      - _log(1 - x) * _log(1 - y)),
        _pair_sample),
)}

TRILOG_EQUATIONS: Dict[str, FunctionalEquation] = {eq.name: eq for eq in (
    FunctionalEquation(
        'duplication', 3, 1,
        'Li3(x) + Li3(-x) = 1/4 Li3(x^2), -1 < x < 1',
        lambda x: -1 < x < 1,
        lambda x: _li3(x) + _li3(-x),
        lambda x: _li3(x * x) / 4,
        lambda rng: (_rand(rng, -1, 1),)),
    FunctionalEquation(
        'inversion', 3, 1,
        'Li3(-x) - Li3(-1/x) = -pi^2/6 log x - 1/6 log^3 x, x > 0',
        lambda x: x > 0,
        lambda x: _li3(-x) - _li3(-1 / x),
        lambda x: -mp.pi ** 2 / 6 * _log(x) - _log(x) ** 3 / 6,
        lambda rng: (_rand(rng, 0, 8),)),
)}

# samplers for property tests, keyed by (order, name)
FUNCTIONAL_DOMAINS: Dict[Tuple[int, str], Callable[[random.Random], Tuple]] = {
    **{(2, name): eq.sample for name, eq in DILOG_EQUATIONS.items()},
    **{(3, name): eq.sample for name, eq in TRILOG_EQUATIONS.items()},
}


def _lookup(table: Dict[str, FunctionalEquation], name: str, kind: str) -> FunctionalEquation:
    try:
        return table[name]
    except KeyError:
        raise UnknownIdentityError(f"Unknown {kind} functional equation {name!r}. "
                                   f"Available: {', '.join(sorted(table))}")


@precision_aware
def dilog_functional_equation(name: str, *args) -> mpf:
    """
    Residual |LHS - RHS| of a dilogarithm functional equation.

    Names: landen, reciprocal_shift, duplication, inversion, reflection,
    product (two arguments), ratio (two arguments).

    Example
    -------
    ::

        from fractions import Fraction
        dilog_functional_equation('reflection', Fraction(1, 2), prec=128)
    """
    return _lookup(DILOG_EQUATIONS, name, 'dilogarithm').residual(*args)


@precision_aware
def trilog_functional_equation(name: str, *args) -> mpf:
    """Residual |LHS - RHS| of a trilogarithm functional equation (duplication, inversion)."""
    return _lookup(TRILOG_EQUATIONS, name, 'trilogarithm').residual(*args)
