# polyfib/bernoulli.py
"""
Exact Bernoulli numbers, Bernoulli polynomials at complex arguments and zeta
values at integers.

Bernoulli numbers use the B_1 = -1/2 convention and are kept as exact
Fractions in a module cache that only grows. Everything else is evaluated at
the active mpmath precision.
"""

import logging
import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from mpmath import mp, mpc, mpf

from .utils import ConvergenceError, PoleError, rational_to_mpf, to_mp

logger = logging.getLogger(__name__)

# B_0..B_K, grown under _lock, never shrunk or mutated in place
_numbers: List[Fraction] = [Fraction(1), Fraction(-1, 2)]
_lock = threading.Lock()


def _grow(k: int) -> None:
    with _lock:
        for m in range(len(_numbers), k + 1):
            if m % 2:
                _numbers.append(Fraction(0))
                continue
            total = Fraction(0)
            for j in range(m):
                if j > 1 and j % 2:
                    continue
                total += math.comb(m + 1, j) * _numbers[j]
            _numbers.append(-total / (m + 1))


def bernoulli_number(k: int) -> Fraction:
    """
    Exact Bernoulli number B_k.

    Uses sum_{j<=m} C(m+1, j) B_j = 0 for m >= 1, skipping the zero odd terms.

    Examples
    --------
    >>> bernoulli_number(6)
    Fraction(1, 42)
    >>> bernoulli_number(12)
    Fraction(-691, 2730)
    """
    if k < 0:
        raise ValueError(f"Bernoulli index must be >= 0, got {k}")
    if k >= len(_numbers):
        _grow(k)
    return _numbers[k]


def bernoulli_numbers(k: int) -> Tuple[Fraction, ...]:
    """B_0 .. B_k as a tuple."""
    bernoulli_number(k)
    return tuple(_numbers[:k + 1])


@lru_cache(maxsize=256)
def bernoulli_poly_coefficients(k: int) -> Tuple[Fraction, ...]:
    """Exact coefficients C(k, j) B_j of B_k(x), highest power of x first."""
    if k < 0:
        raise ValueError(f"Bernoulli polynomial order must be >= 0, got {k}")
    numbers = bernoulli_numbers(k)
    return tuple(math.comb(k, j) * numbers[j] for j in range(k + 1))


def bernoulli_poly(k: int, x):
    """
    Bernoulli polynomial B_k(x) at a real or complex argument.

    The exact coefficients are accumulated by Horner's rule with 32 bits above
    the active precision. Complex input gives an mpc, real input an mpf.
    """
    coefficients = bernoulli_poly_coefficients(k)
    x = to_mp(x)
    with mp.workprec(mp.prec + 32):
        x = +x
        acc = mpc(0) if isinstance(x, mpc) else mpf(0)
        for c in coefficients:
            acc = acc * x + rational_to_mpf(c)
    return +acc


def harmonic_number(n: int) -> Fraction:
    """Exact H_n = 1 + 1/2 + ... + 1/n (H_0 = 0)."""
    return _harmonic(n)


@lru_cache(maxsize=None)
def _harmonic(n: int) -> Fraction:
    total = Fraction(0)
    for j in range(1, n + 1):
        total += Fraction(1, j)
    return total


def zeta_int(m: int) -> mpf:
    """
    Riemann zeta at an integer m != 1, at the active precision.

    Even m >= 2 use the Bernoulli-number formula, m <= 0 use
    zeta(-n) = (-1)^n B_{n+1} / (n+1), odd m >= 3 use Euler-Maclaurin
    summation with the remainder bounded by the first omitted correction.

    Raises
    ------
    PoleError
        For m == 1.
    """
    if m == 1:
        raise PoleError("zeta has a pole at 1")
    return +_zeta_cached(m, mp.prec)


@lru_cache(maxsize=512)
def _zeta_cached(m: int, prec: int) -> mpf:
    with mp.workprec(prec + 16):
        if m <= 0:
            n = -m
            value = rational_to_mpf((-1) ** n * bernoulli_number(n + 1) / (n + 1))
        elif m % 2 == 0:
            # zeta(2n) = |B_2n| (2 pi)^2n / (2 (2n)!)
            b = abs(bernoulli_number(m))
            value = rational_to_mpf(b) * (2 * mp.pi) ** m / (2 * math.factorial(m))
        else:
            value = _zeta_odd(m, prec + 16)
    return value


def _zeta_odd(m: int, wp: int) -> mpf:
    n = int(wp * math.log(2) / (2 * math.pi)) + 10
    eps = mp.ldexp(1, -wp)
    big_n = mpf(n)
    total = mp.fsum(mpf(j) ** -m for j in range(1, n))
    total += big_n ** (1 - m) / (m - 1) + big_n ** -m / 2

    rising = mpf(m)           # m (m+1) ... (m + 2i - 2)
    power = big_n ** (-m - 1)  # N^(-m-2i+1)
    limit = int(math.pi * n)
    for i in range(1, limit):
        term = rational_to_mpf(bernoulli_number(2 * i)) / math.factorial(2 * i) * rising * power
        total += term
        if abs(term) < eps:
            logger.debug(f"zeta({m}): {n} terms + {i} Euler-Maclaurin corrections")
            return total
        rising *= (m + 2 * i - 1) * (m + 2 * i)
        power /= big_n ** 2
    raise ConvergenceError(f"Euler-Maclaurin for zeta({m}) did not settle at {wp} bits")


def bernoulli_closed_term(k: int, w) -> mpc:
    """(2 pi i)^k / k! * B_k(w), the factor shared by every inversion-type closed form."""
    with mp.workprec(mp.prec + 16):
        scale = (2 * mp.pi) ** k / math.factorial(k)
        phase = (mpc(1, 0), mpc(0, 1), mpc(-1, 0), mpc(0, -1))[k % 4]
        value = scale * phase * mpc(bernoulli_poly(k, w))
    return +value
