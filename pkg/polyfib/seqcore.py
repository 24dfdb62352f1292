# polyfib/seqcore.py
"""
Exact Fibonacci and Lucas numbers and the golden-ratio constants.

Fibonacci and Lucas numbers are exact Python integers for every integer index,
computed by fast doubling. The floating-point side (alpha, beta, sqrt(5),
log(alpha)) lives in :class:`GoldenConstants`, cached per precision.
"""

import logging
import operator
from functools import lru_cache
from typing import Iterator, NamedTuple, Tuple

from mpmath import mp, mpf

from .utils import check_prec, round_to

logger = logging.getLogger(__name__)

FAMILIES = ('F', 'L', 'FF', 'FL', 'LL')


def fib_pair(n: int) -> Tuple[int, int]:
    """
    Return (F_n, F_{n+1}) for n >= 0 by fast doubling.

    Uses F_{2k} = F_k (2F_{k+1} - F_k) and F_{2k+1} = F_k^2 + F_{k+1}^2,
    walking the bits of n from the top.
    """
    n = operator.index(n)
    if n < 0:
        raise ValueError(f"fib_pair needs n >= 0, got {n}")
    a, b = 0, 1
    for bit in bin(n)[2:]:
        c = a * (2 * b - a)
        d = a * a + b * b
        if bit == '1':
            a, b = d, c + d
        else:
            a, b = c, d
    return a, b


def fib(n: int) -> int:
    """
    Exact Fibonacci number F_n for any integer n.

    Negative indices follow F_{-n} = (-1)^(n-1) F_n.

    Examples
    --------
    >>> fib(10)
    55
    >>> fib(-4)
    -3
    """
    n = operator.index(n)
    if n >= 0:
        return fib_pair(n)[0]
    value = fib_pair(-n)[0]
    return value if n % 2 else -value


def lucas(n: int) -> int:
    """
    Exact Lucas number L_n for any integer n.

    L_n = 2F_{n+1} - F_n; negative indices follow L_{-n} = (-1)^n L_n.

    Examples
    --------
    >>> lucas(6)
    18
    >>> lucas(-3)
    -4
    """
    n = operator.index(n)
    f, g = fib_pair(abs(n))
    value = 2 * g - f
    if n < 0 and n % 2:
        return -value
    return value


def vajda_2f(r: int, s: int) -> int:
    """F_r L_s + F_s L_r, which equals 2 F_{r+s}."""
    return fib(r) * lucas(s) + fib(s) * lucas(r)


def vajda_2l(r: int, s: int) -> int:
    """L_r L_s + 5 F_r F_s, which equals 2 L_{r+s}."""
    return lucas(r) * lucas(s) + 5 * fib(r) * fib(s)


class GoldenConstants(NamedTuple):
    """
    Golden-ratio constants at a fixed binary precision.

    Attributes
    ----------
    alpha : mpf
        (1 + sqrt(5)) / 2
    beta : mpf
        (1 - sqrt(5)) / 2
    sqrt5 : mpf
    log_alpha : mpf
    prec : int
        Precision in bits every field is rounded to.
    """
    alpha: mpf
    beta: mpf
    sqrt5: mpf
    log_alpha: mpf
    prec: int


@lru_cache(maxsize=None)
def golden_constants(prec: int) -> GoldenConstants:
    """
    Golden-ratio constants correctly rounded to ``prec`` bits.

    sqrt(5) and everything derived from it is computed with 32 extra bits and
    rounded once at the end. Results are cached per precision and shared
    read-only.

    Raises
    ------
    PrecisionError
        If prec < 64.
    """
    prec = check_prec(prec)
    with mp.workprec(prec + 32):
        sqrt5 = mp.sqrt(5)
        alpha = (1 + sqrt5) / 2
        beta = (1 - sqrt5) / 2
        log_alpha = mp.log(alpha)
    logger.debug(f"Golden constants computed at {prec} bits")
    return GoldenConstants(
        alpha=round_to(alpha, prec),
        beta=round_to(beta, prec),
        sqrt5=round_to(sqrt5, prec),
        log_alpha=round_to(log_alpha, prec),
        prec=prec,
    )


def current_constants() -> GoldenConstants:
    """Constants at the active mpmath working precision."""
    return golden_constants(max(mp.prec, 64))


def power_split(m: int, c: GoldenConstants) -> Tuple[mpf, mpf]:
    """
    Return (alpha^m, beta^m) from the exact L_m, F_m and ``c.sqrt5``.

    The component with the larger magnitude is (L_m +/- F_m sqrt5) / 2, where
    the two terms have the same sign. The other one is (-1)^m divided by it,
    since alpha * beta = -1.

    Examples
    --------
    m = 2 gives alpha^2 = (3 + sqrt5) / 2; m = -1 gives alpha^-1 = (sqrt5 - 1) / 2.
    """
    m = operator.index(m)
    big_l, big_f = lucas(m), fib(m)
    sign = -1 if m % 2 else 1
    with mp.workprec(c.prec + 16):
        if m >= 0:
            alpha_m = (big_l + big_f * c.sqrt5) / 2
            beta_m = sign / alpha_m
        else:
            beta_m = (big_l - big_f * c.sqrt5) / 2
            alpha_m = sign / beta_m
    return round_to(alpha_m, c.prec), round_to(beta_m, c.prec)


def _linear_terms(which: str, r: int, s: int, start: int) -> Iterator[int]:
    """x_j = F_{rj+s} or L_{rj+s} for j >= start, by x_{j+1} = L_r x_j - (-1)^r x_{j-1}."""
    seq = fib if which == 'F' else lucas
    trace = lucas(r)
    norm = -1 if r % 2 else 1
    prev, cur = seq(r * start + s), seq(r * (start + 1) + s)
    yield prev
    while True:
        yield cur
        prev, cur = cur, trace * cur - norm * prev


def term_sequence(family: str, r: int, s: int = 0, start: int = 1) -> Iterator[int]:
    """
    Generate the exact coefficients a_start, a_start+1, ... of a series family.

    ``F`` and ``L`` give F_{rj+s} and L_{rj+s}; the product families ``FF``,
    ``FL`` and ``LL`` give F_{rj}F_{sj}, F_{rj}L_{sj} and L_{rj}L_{sj}.

    Examples
    --------
    >>> from itertools import islice
    >>> list(islice(term_sequence('F', 2, 1), 4))
    [2, 5, 13, 34]
    """
    if family not in FAMILIES:
        raise ValueError(f"Unknown family {family!r}. Expected one of {', '.join(FAMILIES)}")
    if len(family) == 1:
        return _linear_terms(family, r, s, start)
    left = _linear_terms(family[0], r, 0, start)
    right = _linear_terms(family[1], s, 0, start)
    return (a * b for a, b in zip(left, right))
