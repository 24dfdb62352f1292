# polyfib/fibseries/direct.py
"""
Direct summation with a certified tail bound.

Inside the convergence region rho = |z| alpha^e < 1 every term satisfies
|w_j a_j / j^k| <= C rho^j j^max(0, -k), which bounds the tail by a geometric
series. The partial sum stops at the first N whose bound falls below
2^(-prec-8).
"""

import logging
from typing import Iterator, Tuple

from mpmath import mp, mpc, mpf

from ..seqcore import term_sequence
from ..utils import DivergenceError, precision_aware, target_prec, to_mp
from .spec import Method, Part, SeriesSpec, SeriesValue, Weight

logger = logging.getLogger(__name__)

# -cos(j pi / 2) by j mod 4
_QUARTER = (-1, 0, 1, 0)


def tail_bound(c: mpf, rho: mpf, m: int, n: int) -> mpf:
    """
    Bound on sum_{j > n} C rho^j j^m.

    Term ratios beyond n are at most q = rho ((n+2)/(n+1))^m; when q >= 1
    the bound is infinite.
    """
    q = rho * (mpf(n + 2) / (n + 1)) ** m
    if q >= 1:
        return mp.inf
    return c * mpf(n + 1) ** m * rho ** (n + 1) / (1 - q)


def terms_needed(c: mpf, rho: mpf, m: int, eps: mpf, max_terms: int) -> Tuple[int, mpf]:
    """Smallest scanned N with tail_bound(c, rho, m, N) < eps."""
    n = max(1, int(mp.log(c / eps, 2) / -mp.log(rho, 2)))
    step = max(1, n // 8)
    while n <= max_terms:
        bound = tail_bound(c, rho, m, n)
        if bound < eps:
            return n, bound
        n += step
    raise DivergenceError(f"Tail bound not certified within {max_terms} terms (rho = {mp.nstr(rho, 8)})")


def _weights(spec: SeriesSpec) -> Iterator:
    """w_start, w_start+1, ... at the active precision."""
    j = spec.start
    if spec.weight == Weight.ALTERNATING:
        while True:
            yield 1 if j % 2 else -1
            j += 1
    if spec.weight == Weight.QUARTER:
        while True:
            yield _QUARTER[j % 4]
            j += 1
    if spec.weight == Weight.TRIG:
        x = spec.x_value()
        ratio = to_mp(spec.z_value()) * mp.expj(x)
    else:
        ratio = to_mp(spec.z_value())
    power = ratio ** j
    while True:
        yield power
        power *= ratio


@precision_aware
def direct_sum(spec: SeriesSpec) -> SeriesValue:
    """
    Partial sum of ``spec`` with a certified tail bound.

    Raises
    ------
    DivergenceError
        If the spec lies outside its convergence region, or the bound needs
        more than ``max_series_terms`` terms.

    Example
    -------
    ::

        direct_sum(SeriesSpec('F', r=1, k=0, z='1/10'))    # 10/89
    """
    from ..config import get_setting

    rho = spec.region_ratio()
    if rho >= 1:
        raise DivergenceError(f"{spec.label()} diverges: rho = {mp.nstr(rho, 10)} >= 1. "
                              f"Use a closed form or the Abel oracle")

    m = max(0, -spec.k)
    if rho == 0:
        last, bound = spec.start, mpf(0)
    else:
        eps = mp.ldexp(1, -target_prec() - 8)
        last, bound = terms_needed(spec.coefficient_bound(), rho, m, eps,
                                   int(get_setting('max_series_terms', 2000000)))
    logger.debug(f"direct_sum {spec.label()}: {last} terms, tail bound {mp.nstr(bound, 5)}")

    coefficients = term_sequence(spec.family, spec.r, spec.s, spec.start)
    weights = _weights(spec)
    terms = []
    for j in range(spec.start, last + 1):
        a_j = next(coefficients)
        w_j = next(weights)
        if j == 0:
            terms.append(mpf(a_j))
            continue
        if a_j == 0 or w_j == 0:
            continue
        terms.append(a_j * w_j / mpf(j) ** spec.k)
    total = mp.fsum(terms) if terms else mpf(0)

    if spec.weight == Weight.TRIG:
        total = total.imag if spec.part == Part.SIN else total.real
    elif isinstance(total, mpc) and total.imag == 0:
        total = total.real
    return SeriesValue(total, Method.DIRECT, bound, spec)
