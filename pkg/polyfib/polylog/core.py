# polyfib/polylog/core.py
"""
Integer-order polylogarithms Li_k(z).

Each evaluation path is a function of its own so that paths can be compared
against each other; :func:`li` is the dispatcher and records which path it
took in the returned :class:`PolylogValue`.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

from mpmath import mp, mpc, mpf

from ..bernoulli import bernoulli_closed_term, harmonic_number, zeta_int
from ..utils import (DivergenceError, DomainError, PoleError, format_value, precision_aware,
                     rational_to_mpf, real_if_close, round_to, split_parts, target_prec, to_mp)

logger = logging.getLogger(__name__)


class Path:
    """Evaluation paths of :func:`li`."""
    RATIONAL = 'rational'
    LOGARITHM = 'logarithm'
    DIRECT_SERIES = 'direct_series'
    LOG_EXPANSION = 'log_expansion'
    INVERSION = 'inversion'
    ZETA = 'zeta'

    ALL = (RATIONAL, LOGARITHM, DIRECT_SERIES, LOG_EXPANSION, INVERSION, ZETA)


class Side:
    """Which side of the branch cut [1, inf) a real argument z > 1 is approached from."""
    UPPER = 'upper'
    LOWER = 'lower'

    ALL = (UPPER, LOWER)

    @classmethod
    def check(cls, side: str) -> str:
        if side not in cls.ALL:
            raise ValueError(f"Invalid side {side!r}. Expected 'upper' or 'lower'")
        return side


class PolylogValue:
    """
    Value of Li_k(z) together with the path that produced it.

    Attributes
    ----------
    value : mpf or mpc
    path : str
        One of :class:`Path`.
    tail_bound : mpf
        Certified bound on the truncation error (0 for closed forms).
    """

    __slots__ = ('value', 'path', 'tail_bound')

    def __init__(self, value, path: str, tail_bound=0):
        self.value = value
        self.path = path
        self.tail_bound = mpf(tail_bound)

    def rounded(self, prec: int) -> 'PolylogValue':
        return PolylogValue(round_to(self.value, prec), self.path, round_to(self.tail_bound, prec))

    def __repr__(self):
        return f"PolylogValue({mp.nstr(self.value, 15)}, path={self.path!r}, tail_bound={mp.nstr(self.tail_bound, 3)})"


class PolylogQuery:
    """A request for Li_k(z) at ``prec`` bits, as the CLI builds it."""

    __slots__ = ('k', 'z', 'prec')

    def __init__(self, k: int, z, prec: int):
        self.k = int(k)
        self.z = z
        self.prec = prec
        if self.k <= 1 and _is_one(z):
            raise PoleError(f"Li_{self.k} has a pole at z = 1")

    def evaluate(self, side: str = Side.UPPER) -> PolylogValue:
        return li(self.k, self.z, side=side, prec=self.prec)

    def to_dict(self, result: PolylogValue, digits: Optional[int] = None) -> dict:
        re_part, im_part = split_parts(result.value)
        z_re, z_im = split_parts(to_mp(self.z))
        return {
            'k': self.k,
            'z': format_value(z_re, self.prec, digits) + ('' if z_im == 0 else f",{format_value(z_im, self.prec, digits)}"),
            'value_re': format_value(re_part, self.prec, digits),
            'value_im': format_value(im_part, self.prec, digits),
            'path': result.path,
            'tail_bound': mp.nstr(result.tail_bound, 5),
        }


def _is_one(z) -> bool:
    if isinstance(z, (int, Fraction)):
        return z == 1
    return to_mp(z) == 1


def _is_real(z) -> bool:
    if isinstance(z, (int, Fraction, float, mpf)):
        return True
    if isinstance(z, complex):
        return z.imag == 0
    return isinstance(z, mpc) and z.imag == 0


def _real_part(z):
    """Exact rationals stay exact; everything else becomes mpf."""
    if isinstance(z, (int, Fraction)):
        return z
    z = to_mp(z)
    return z.real if isinstance(z, mpc) else z


def _on_unit_circle(z) -> bool:
    if isinstance(z, (int, Fraction)):
        return abs(z) == 1
    return abs(abs(to_mp(z)) - 1) <= mp.ldexp(1, -mp.prec + 4)


@lru_cache(maxsize=64)
def _nonpositive_numerator(n: int) -> Tuple[int, ...]:
    """
    Integer coefficients (ascending) of P_n with Li_{-n}(z) = P_n(z) / (1-z)^(n+1).

    P_0 = z and P_{m+1} = z (P_m' (1-z) + (m+1) P_m), which is z d/dz applied to
    P_m / (1-z)^(m+1).
    """
    coeffs = [0, 1]
    for m in range(n):
        deriv = [i * c for i, c in enumerate(coeffs)][1:] or [0]
        # P' (1 - z)
        inner = [0] * (len(deriv) + 1)
        for i, c in enumerate(deriv):
            inner[i] += c
            inner[i + 1] -= c
        for i, c in enumerate(coeffs):
            if i < len(inner):
                inner[i] += (m + 1) * c
            else:
                inner.append((m + 1) * c)
        coeffs = [0] + inner
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
    return tuple(coeffs)


@precision_aware
def li_nonpositive(n: int, z):
    """
    Li_{-n}(z) for n >= 0 as an exact rational function of z.

    Rational input returns an exact Fraction, anything else an mpf/mpc at the
    active precision.

    Examples
    --------
    >>> li_nonpositive(2, Fraction(1, 2))
    Fraction(6, 1)

    Raises
    ------
    PoleError
        At z = 1.
    """
    if n < 0:
        raise ValueError(f"li_nonpositive needs n >= 0, got {n}")
    if _is_one(z):
        raise PoleError(f"Li_{-n} has a pole at z = 1")
    coeffs = _nonpositive_numerator(n)
    if isinstance(z, (int, Fraction)):
        z = Fraction(z)
        numerator = Fraction(0)
        for c in reversed(coeffs):
            numerator = numerator * z + c
        return numerator / (1 - z) ** (n + 1)
    z = to_mp(z)
    numerator = mpf(0)
    for c in reversed(coeffs):
        numerator = numerator * z + c
    return numerator / (1 - z) ** (n + 1)


def _alternating_unit(k: int, wp: int) -> Tuple[mpf, mpf]:
    """
    Li_k(-1) by alternating-series acceleration.

    1/(j+1)^k is a moment sequence on [0, 1], so the accelerated partial sum
    after n steps is within 2 / (3 + sqrt 8)^n of the limit.
    """
    n = int(math.ceil((wp + 9) / math.log2(3 + math.sqrt(8)))) + 1
    d = (3 + mp.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b = mpf(-1)
    c = -d
    total = mpf(0)
    for j in range(n):
        c = b - c
        total += c / mpf(j + 1) ** k
        b = (j + n) * (j - n) * b / ((j + mpf(1) / 2) * (j + 1))
    bound = 2 / (3 + mp.sqrt(8)) ** n
    logger.debug(f"Li_{k}(-1): {n} accelerated terms")
    return -total / d, bound


@precision_aware
def li_series(k: int, z) -> PolylogValue:
    """
    Li_k(z) by direct summation of sum z^j / j^k with a certified tail bound.

    For |z| < 1 the number of terms N makes |z|^(N+1) / ((N+1)^k (1-|z|))
    smaller than 2^-(wp+8). On |z| = 1 with k >= 2 the integral bound
    N^(1-k) / (k-1) is used, except at z = -1 where the alternating series is
    accelerated with its own certified bound.

    The integral bound needs about 2^((wp+8)/(k-1)) terms, so on |z| = 1 away
    from z = -1 only high orders are practical: at prec = 128 (160 working
    bits) k = 2 needs 2^168 terms, while k = 10 needs about 2^19.
    :func:`li` never sends unit points here; it uses the zeta path at z = 1
    and the log expansion elsewhere on the circle.

    Raises
    ------
    DivergenceError
        For |z| > 1, for k = 1 on the unit circle, or when the bound needs more
        than ``max_series_terms`` terms (e.g. z = 1 or z = i with k = 2).
    """
    from ..config import get_setting

    if k < 1:
        raise DomainError(f"li_series needs k >= 1, got {k}")
    max_terms = int(get_setting('max_series_terms', 2000000))
    wp = mp.prec
    z = to_mp(z)
    size = abs(z)

    if size == 0:
        return PolylogValue(mpf(0), Path.DIRECT_SERIES, 0)

    if _on_unit_circle(z):
        if k < 2:
            raise DivergenceError(f"Li_{k}(z) does not converge on |z| = 1")
        if _is_real(z) and z.real < 0:
            value, bound = _alternating_unit(k, wp)
            return PolylogValue(value, Path.DIRECT_SERIES, bound)
        # N^(1-k) / (k-1) < 2^-(wp+8)
        log2_terms = ((wp + 8) - math.log2(k - 1)) / (k - 1)
        if log2_terms > math.log2(max_terms):
            raise DivergenceError(f"Li_{k} on |z| = 1 needs about 2^{log2_terms:.0f} terms at {wp} bits "
                                  f"(max_series_terms is {max_terms})")
        n_terms = int(math.ceil(2 ** log2_terms))
        bound = mpf(n_terms) ** (1 - k) / (k - 1)
    elif size < 1:
        log_size = float(mp.log(size))
        slack = (wp + 8) * math.log(2) - float(mp.log(1 - size))
        n_terms = max(1, int(math.ceil(slack / -log_size)))
        if n_terms > max_terms:
            raise DivergenceError(f"Li_{k}({mp.nstr(z, 8)}) needs {n_terms} terms "
                                  f"(max_series_terms is {max_terms})")
        bound = size ** (n_terms + 1) / (mpf(n_terms + 1) ** k * (1 - size))
    else:
        raise DivergenceError(f"Series for Li_{k}(z) diverges for |z| = {mp.nstr(size, 8)} > 1")

    total = mpc(0) if isinstance(z, mpc) else mpf(0)
    power = total + 1
    for j in range(1, n_terms + 1):
        power *= z
        total += power / mpf(j) ** k
    logger.debug(f"li_series({k}, {mp.nstr(z, 8)}): {n_terms} terms")
    if isinstance(total, mpc) and _is_real(z):
        total = total.real
    return PolylogValue(total, Path.DIRECT_SERIES, bound)


@precision_aware
def li1(z):
    """
    Li_1(z) = -log(1 - z), principal branch.

    Real z > 1 lies on the cut; the principal logarithm gives the value from
    below. :func:`li` routes that case through :func:`li_inversion` so the
    side hint applies.
    """
    if _is_one(z):
        raise PoleError("Li_1 has a pole at z = 1")
    z = to_mp(z)
    if _is_real(z):
        z = z.real if isinstance(z, mpc) else z
        if z < 1:
            return -mp.log(1 - z)
    return -mp.log(1 - mpc(z))


@precision_aware
def li_log_expansion(k: int, z, side: str = Side.UPPER) -> PolylogValue:
    """
    Li_k(z) for k >= 2 from the expansion of Li_k(e^u) in powers of u = log z.

    Li_k(e^u) = sum_{n != k-1} zeta(k-n) u^n / n!
                + u^(k-1) / (k-1)! (H_{k-1} - log(-u))

    valid for |u| < 2 pi. Terms with n >= N are bounded by
    3.3 (2 pi)^(k-1) rho^N / (1 - rho), rho = |u| / (2 pi). On the cut z > 1
    the side hint fixes log(-u) = log|u| -/+ i pi (upper/lower).
    """
    Side.check(side)
    if k < 2:
        raise DomainError(f"li_log_expansion needs k >= 2, got {k}")
    zm = to_mp(z)
    if zm == 0:
        raise DomainError("li_log_expansion is undefined at z = 0")
    if zm == 1:
        return PolylogValue(zeta_int(k), Path.LOG_EXPANSION, 0)

    real_input = _is_real(zm)
    x = zm.real if isinstance(zm, mpc) else zm
    u = mp.log(zm) if not real_input else (mp.log(x) if x > 0 else mpc(mp.log(-x), mp.pi))
    two_pi = 2 * mp.pi
    rho = abs(u) / two_pi
    if rho >= 1:
        raise DomainError(f"li_log_expansion needs |log z| < 2 pi, got |log z| = {mp.nstr(abs(u), 8)}")

    wp = mp.prec
    target = -(wp + 8) * math.log(2)
    scale = math.log(3.3) + (k - 1) * math.log(2 * math.pi) - math.log(1 - float(rho))
    if rho == 0:
        n_terms = k
    else:
        n_terms = max(k, int(math.ceil((target - scale) / math.log(float(rho)))))

    if real_input and x > 1:
        log_minus_u = mpc(mp.log(u), -mp.pi if side == Side.UPPER else mp.pi)
    else:
        log_minus_u = mp.log(-u)

    total = mpc(0)
    u_power = mpc(1)
    for n in range(n_terms):
        if n > 0:
            u_power = u_power * u / n
        if n == k - 1:
            total += u_power * (rational_to_mpf(harmonic_number(k - 1)) - log_minus_u)
        elif n - k >= 2 and (n - k) % 2 == 0:
            continue  # zeta vanishes at negative even integers
        else:
            total += zeta_int(k - n) * u_power
    bound = mpf(3.3) * two_pi ** (k - 1) * rho ** n_terms / (1 - rho)
    logger.debug(f"li_log_expansion({k}, {mp.nstr(zm, 8)}): {n_terms} terms")

    if real_input and x <= 1:
        total = total.real
    return PolylogValue(total, Path.LOG_EXPANSION, bound)


@precision_aware
def li_inversion(k: int, z, side: str = Side.UPPER) -> PolylogValue:
    """
    Li_k(z) for real |z| > 1 from the inversion relation

        Li_k(z) = -(2 pi i)^k / k! B_k(w) - (-1)^k Li_k(1/z)

    with w = 1/2 + log|z| / (2 pi i) for z < -1. For z > 1, w = log z / (2 pi i)
    on the upper side and 1 + log z / (2 pi i) on the lower side. Li_k(1/z) comes
    from the direct series. For z < -1 the result is asserted to be real.

    Raises
    ------
    DomainError
        If z is not real, |z| <= 1 or k < 1.
    """
    Side.check(side)
    if k < 1:
        raise DomainError(f"li_inversion needs k >= 1, got {k}")
    if not _is_real(z):
        raise DomainError("li_inversion is only defined for real z")
    x = _real_part(z)
    if abs(x) <= 1:
        raise DomainError(f"li_inversion needs |z| > 1, got {x}")
    inverse = 1 / Fraction(x) if isinstance(x, (int, Fraction)) else 1 / x
    x = to_mp(x)

    two_pi_i = mpc(0, 2 * mp.pi)
    if x < 0:
        w = mpf(1) / 2 + mp.log(-x) / two_pi_i
    elif side == Side.UPPER:
        w = mp.log(x) / two_pi_i
    else:
        w = 1 + mp.log(x) / two_pi_i

    reflected = li_series(k, inverse)
    sign = -1 if k % 2 else 1
    value = -bernoulli_closed_term(k, w) - sign * reflected.value
    if x < 0:
        value = real_if_close(value, target_prec(), context=f"Li_{k}({mp.nstr(x, 8)})")
    return PolylogValue(value, Path.INVERSION, reflected.tail_bound)


@precision_aware
def li(k: int, z, side: str = Side.UPPER) -> PolylogValue:
    """
    Li_k(z) for any integer k, routed to the path that suits (k, z).

    ============================  ==================
    case                          path
    ============================  ==================
    k <= 0                        rational
    k = 1                         logarithm (inversion for real z > 1)
    k >= 2, |z| <= series_cutoff  direct_series
    k >= 2, cutoff < |z| < 1      log_expansion
    k >= 2, z = 1 or z = -1       zeta
    k >= 2, other |z| = 1         log_expansion
    real |z| > 1                  inversion
    ============================  ==================

    Examples
    --------
    >>> li(2, Fraction(1, 2), prec=64).path
    'direct_series'

    Raises
    ------
    DomainError
        For complex z with |z| > 1 and k >= 2.
    """
    from ..config import get_setting

    Side.check(side)
    if k <= 0:
        value = li_nonpositive(-k, z)
        return PolylogValue(to_mp(value), Path.RATIONAL, 0)

    real = _is_real(z)
    if k == 1:
        if real and _real_part(z) > 1:
            return li_inversion(1, z, side)
        return PolylogValue(li1(z), Path.LOGARITHM, 0)

    cutoff = mpf(get_setting('series_cutoff', 0.75))
    size = abs(to_mp(z))
    if size <= cutoff:
        return li_series(k, z)
    if _on_unit_circle(z):
        if real:
            zeta_k = zeta_int(k)
            if _real_part(z) > 0:
                return PolylogValue(zeta_k, Path.ZETA, 0)
            return PolylogValue(-(1 - mpf(2) ** (1 - k)) * zeta_k, Path.ZETA, 0)
        return li_log_expansion(k, z, side)
    if size < 1:
        return li_log_expansion(k, z, side)
    if real:
        return li_inversion(k, z, side)
    raise DomainError(f"Li_{k}(z) is not continued off the real axis for |z| > 1 "
                      f"(z = {mp.nstr(to_mp(z), 8)})")


@precision_aware
def re_li_on_imaginary_axis(k: int, y) -> mpf:
    """Re Li_k(iy) = 2^-k Li_k(-y^2) for real y."""
    if k < 1:
        raise DomainError(f"re_li_on_imaginary_axis needs k >= 1, got {k}")
    y = _real_part(y)
    value = li(k, -y * y).value
    return mp.ldexp(_real_part(value), -k)


@precision_aware
def li1_polar_parts(z, x) -> Tuple[mpf, mpf]:
    """
    Real and imaginary parts of Li_1(z e^(ix)) for real |z| < 1 and real x.

    Re = -1/2 log(1 - 2 z cos x + z^2), Im = atan(z sin x / (1 - z cos x)).
    """
    z = to_mp(_real_part(z))
    if abs(z) >= 1:
        raise DomainError(f"li1_polar_parts needs |z| < 1, got {mp.nstr(z, 8)}")
    x = to_mp(_real_part(x))
    cos_x, sin_x = mp.cos(x), mp.sin(x)
    re_part = -mp.log(1 - 2 * z * cos_x + z * z) / 2
    im_part = mp.atan2(z * sin_x, 1 - z * cos_x)
    return re_part, im_part

