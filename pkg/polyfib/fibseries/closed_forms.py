# polyfib/fibseries/closed_forms.py
"""
Closed forms of the weighted Fibonacci/Lucas series.

Every coefficient family splits as a_j = sum_i c_i b_i^j over golden-ratio
bases b_i (Binet). Summing each exponential term gives a polylogarithm
combination; pairing Li_k(t) with Li_k(1/t) turns the alternating series
into Bernoulli polynomials at complex arguments. The k = 0 and k = 1 cases
also have rational, logarithmic and trigonometric forms.
"""

import logging
from fractions import Fraction
from typing import List, Tuple

from mpmath import mp, mpc, mpf

from ..bernoulli import bernoulli_closed_term
from ..polylog.core import Side, li, re_li_on_imaginary_axis
from ..seqcore import current_constants, fib, lucas, power_split
from ..utils import (DomainError, ParityError, PoleError, precision_aware, rational_to_mpf,
                     real_if_close, target_prec, to_mp)
from .spec import Family, Method, Part, SeriesSpec, SeriesValue, Weight

logger = logging.getLogger(__name__)

Decomposition = List[Tuple[mpf, mpf]]


def decompose(family: str, r: int, s: int = 0) -> Decomposition:
    """
    [(c_i, b_i)] with a_j = sum_i c_i b_i^j, at the active precision.

    F_{rj+s} = (alpha^s alpha^rj - beta^s beta^rj) / sqrt5 and L_{rj+s} is the
    sum; product families expand into the four bases alpha^(r+s), beta^(r+s),
    alpha^r beta^s and beta^r alpha^s.
    """
    c = current_constants()
    if family in (Family.F, Family.L):
        alpha_r, beta_r = power_split(r, c)
        alpha_s, beta_s = power_split(s, c)
        if family == Family.F:
            return [(alpha_s / c.sqrt5, alpha_r), (-beta_s / c.sqrt5, beta_r)]
        return [(alpha_s, alpha_r), (beta_s, beta_r)]

    alpha_sum, beta_sum = power_split(r + s, c)
    # alpha^r beta^s = (-1)^s alpha^(r-s), beta^r alpha^s = (-1)^r alpha^(s-r)
    cross_rs = power_split(r - s, c)[0] * (-1 if s % 2 else 1)
    cross_sr = power_split(s - r, c)[0] * (-1 if r % 2 else 1)
    bases = (alpha_sum, beta_sum, cross_rs, cross_sr)
    if family == Family.FF:
        coefficients = (mpf(1) / 5, mpf(1) / 5, -mpf(1) / 5, -mpf(1) / 5)
    elif family == Family.FL:
        inv = 1 / c.sqrt5
        coefficients = (inv, -inv, inv, -inv)
    else:
        coefficients = (mpf(1),) * 4
    return list(zip(coefficients, bases))


def _tidy(value):
    """Drop an imaginary part at rounding level."""
    if isinstance(value, mpc):
        scale = max(mpf(1), abs(value.real))
        if abs(value.imag) <= mp.ldexp(scale, -target_prec() + 16):
            return value.real
    return value


def _regularized(spec: SeriesSpec) -> bool:
    return not spec.in_region()


@precision_aware
def polylog_form(spec: SeriesSpec) -> SeriesValue:
    """
    The series as a combination of polylogarithms.

    plain        sum_i c_i Li_k(b_i z)
    alternating  -sum_i c_i Li_k(-b_i)
    quarter      -sum_i c_i 2^-k Li_k(-b_i^2)   (Re Li_k(i b_i), k <= 0 directly)
    trig         sum_i c_i Re/Im Li_k(b_i z e^(ix))

    Arguments on the cut (1, inf) follow ``spec.side``.

    Example
    -------
    ::

        polylog_form(SeriesSpec('L', r=2, k=2, weight='alternating'))   # pi^2/6 + 2 log^2 alpha
    """
    pairs = decompose(spec.family, spec.r, spec.s)
    k = spec.k
    total = mpf(0)
    bound = mpf(0)
    for coef, base in pairs:
        if spec.weight == Weight.ALTERNATING:
            result = li(k, -base, spec.side)
            term = -result.value
        elif spec.weight == Weight.QUARTER:
            if k >= 1:
                term = -re_li_on_imaginary_axis(k, base)
                result = None
            else:
                result = li(k, mpc(0, base))
                term = -to_mp(result.value).real
        elif spec.weight == Weight.TRIG:
            argument = to_mp(spec.z_value()) * base * mp.expj(spec.x_value())
            result = li(k, argument, spec.side)
            value = to_mp(result.value)
            term = value.imag if spec.part == Part.SIN else value.real
        else:
            z = spec.z_value()
            result = li(k, to_mp(z) * base, spec.side)
            term = result.value
        total += coef * to_mp(term)
        if result is not None:
            bound += abs(coef) * result.tail_bound
    if spec.start == 0:
        total += sum(coef for coef, _ in pairs)
    return SeriesValue(_tidy(total), Method.POLYLOG_FORM, bound, spec, _regularized(spec))


def _bernoulli_c(k: int, m: int) -> mpc:
    """(2 pi i)^k / k! B_k(1/2 + m log alpha / (2 pi i))."""
    la = current_constants().log_alpha
    return bernoulli_closed_term(k, mpc(mpf(1) / 2, -m * la / (2 * mp.pi)))


def _bernoulli_cross_odd(k: int, r: int, s: int) -> mpc:
    """(2 pi i)^k / k! B_k((s - r) log alpha / (2 pi i)), the r odd cross term (lower side)."""
    la = current_constants().log_alpha
    return bernoulli_closed_term(k, mpc(0, -(s - r) * la / (2 * mp.pi)))


def _alternating_sign(spec: SeriesSpec) -> int:
    """+1 for the alternating weight, -1 for the plain weight at z = -1."""
    if spec.weight == Weight.ALTERNATING:
        return 1
    if spec.weight == Weight.PLAIN and spec.z_value() == -1:
        return -1
    raise DomainError(f"Bernoulli forms need z = -1, got {spec.label()}")


def _linear_bernoulli(spec: SeriesSpec):
    if spec.s != 0:
        raise DomainError(f"Bernoulli forms of {spec.family}_{{rj+s}} need s = 0, got s = {spec.s}")
    if spec.r % 2:
        raise ParityError(f"Bernoulli forms of {spec.family}_{{rj}} need r even, got r = {spec.r}")
    k = spec.k
    if spec.family == Family.F:
        if k < 1 or k % 2 == 0:
            raise ParityError(f"Bernoulli form of F_{{rj}} needs k odd, got k = {k}")
        return _bernoulli_c(k, spec.r) / current_constants().sqrt5
    if k < 0 or k % 2:
        raise ParityError(f"Bernoulli form of L_{{rj}} needs k even, got k = {k}")
    return _bernoulli_c(k, spec.r)


def _product_bernoulli(spec: SeriesSpec):
    r, s, k = spec.r, spec.s, spec.k
    family = spec.family
    if (r - s) % 2:
        raise ParityError(f"Bernoulli forms of products need r, s of the same parity, got r = {r}, s = {s}")
    want_odd = family == Family.FL
    if k < 0 or (k % 2 == 1) != want_odd:
        raise ParityError(f"Bernoulli form of {family} needs k {'odd' if want_odd else 'even'}, got k = {k}")
    if r % 2:
        if s > r:
            raise DomainError("r odd, s>r undefined")
        if s == r and k == (1 if want_odd else 0):
            raise PoleError(f"{family} with r = s odd has a pole at k = {k}")
        cross = _bernoulli_cross_odd(k, r, s)
    else:
        cross = _bernoulli_c(k, s - r)

    main = _bernoulli_c(k, r + s)
    if family == Family.FF:
        return (main - cross) / 5
    if family == Family.FL:
        return (main - cross) / current_constants().sqrt5
    return main + cross


@precision_aware
def bernoulli_form(spec: SeriesSpec) -> SeriesValue:
    """
    Bernoulli-polynomial closed form of an alternating (z = -1) series.

    With C_m = (2 pi i)^k / k! B_k(1/2 + m log alpha / (2 pi i)):

    ======  ===========  ============================
    family  hypotheses   value
    ======  ===========  ============================
    F       r even,      C_r / sqrt5
            k odd
    L       r even,      C_r
            k even
    FF      k even       (C_(r+s) - D) / 5
    FL      k odd        (C_(r+s) - D) / sqrt5
    LL      k even       C_(r+s) + D
    ======  ===========  ============================

    Products need r and s of the same parity. D is C_(s-r) for r even and
    (2 pi i)^k / k! B_k((s-r) log alpha / (2 pi i)) for r odd, s <= r; the
    latter matches the lower side of the cut and its value is complex when
    s < r (the upper side is the conjugate).

    Raises
    ------
    ParityError
        Parity hypotheses violated.
    DomainError
        z != -1, s != 0 for F/L, or r odd with s > r.
    PoleError
        r = s odd at k = 0 (FF, LL) or k = 1 (FL).
    """
    sign = _alternating_sign(spec)
    if spec.is_product:
        value = _product_bernoulli(spec)
        complex_ok = spec.r % 2 == 1
    else:
        value = _linear_bernoulli(spec)
        complex_ok = False
    value = sign * value
    if complex_ok:
        if spec.side == Side.UPPER and isinstance(value, mpc):
            value = value.conjugate()
        value = _tidy(value)
    else:
        value = real_if_close(value, target_prec(), context=spec.label())
    return SeriesValue(value, Method.BERNOULLI_FORM, 0, spec, _regularized(spec))


@precision_aware
def quarter_series_form(family: str, r: int, k: int) -> SeriesValue:
    """
    sum_j (a_(4j-2) / (4j-2)^k - a_(4j) / (4j)^k) for a_j = F_rj or L_rj.

    F (k odd):       (2 pi i)^k / (k! 2^k sqrt5) B_k(1/2 + r log alpha / (pi i))
    L (k even >= 0): (2 pi i)^k / (k! 2^k) B_k(1/2 + r log alpha / (pi i))

    Raises
    ------
    ParityError
        For the wrong parity of k.
    """
    spec = SeriesSpec(family, r, 0, k, weight=Weight.QUARTER)
    if spec.is_product:
        raise DomainError(f"quarter_series_form covers F and L, got {family}")
    if family == Family.F and (k < 1 or k % 2 == 0):
        raise ParityError(f"Quarter form of F_{{rj}} needs k odd, got k = {k}")
    if family == Family.L and (k < 0 or k % 2):
        raise ParityError(f"Quarter form of L_{{rj}} needs k even, got k = {k}")
    value = _bernoulli_c(k, 2 * r) / mpf(2) ** k
    if family == Family.F:
        value /= current_constants().sqrt5
    value = real_if_close(value, target_prec(), context=spec.label())
    return SeriesValue(value, Method.BERNOULLI_FORM, 0, spec, _regularized(spec))


def _linear_only(family: str, what: str) -> str:
    family = str(family).upper()
    if family not in (Family.F, Family.L):
        raise DomainError(f"{what} covers F and L, got {family}")
    return family


def _finish(value):
    if isinstance(value, Fraction):
        return rational_to_mpf(value)
    return _tidy(to_mp(value))


@precision_aware
def generating_function(family: str, r: int, s: int, z, start: int = 1) -> SeriesValue:
    """
    sum_{j >= start} z^j X_{rj+s} as a rational function of z.

    start = 1:  (X_{r+s} z - (-1)^r z^2 X_s) / (1 - L_r z + (-1)^r z^2)
    start = 0:  (X_s - (-1)^r z X_{s-r}) / (1 - L_r z + (-1)^r z^2)

    Rational z is evaluated exactly. Outside |z| < alpha^-|r| the value is the
    continuation and is flagged regularized.

    Raises
    ------
    PoleError
        When the denominator vanishes.

    Examples
    --------
    F, r = 1, s = 0 gives z / (1 - z - z^2); at z = 1/10 that is 10/89.
    """
    family = _linear_only(family, 'generating_function')
    spec = SeriesSpec(family, r, s, 0, z=z, start=start)
    x = spec.z_value()
    if not isinstance(x, Fraction):
        x = to_mp(x)
    seq = fib if family == Family.F else lucas
    norm = -1 if r % 2 else 1
    den = 1 - lucas(r) * x + norm * x * x
    if den == 0:
        raise PoleError(f"Generating function denominator 1 - L_r z + (-1)^r z^2 vanishes at z = {spec.z}")
    if start == 1:
        num = seq(r + s) * x - norm * x * x * seq(s)
    else:
        num = seq(s) - norm * x * seq(s - r)
    return SeriesValue(_finish(num / den), Method.RATIONAL_GF, 0, spec, _regularized(spec))


def _log(x, what: str):
    if isinstance(x, (Fraction, int, mpf)) and x <= 0:
        raise DomainError(f"log of non-positive {what}: {mp.nstr(to_mp(x), 10)}")
    if x == 0:
        raise DomainError(f"log of zero {what}")
    return mp.log(to_mp(x))


def _log_weights(family: str, s: int) -> Tuple[mpf, mpf]:
    """(u, v) with X_{rj+s} = u L_rj + v F_rj sqrt5, the even and odd parts."""
    sqrt5 = current_constants().sqrt5
    if family == Family.F:
        return rational_to_mpf(Fraction(fib(s), 2)), lucas(s) / (2 * sqrt5)
    return rational_to_mpf(Fraction(lucas(s), 2)), fib(s) * sqrt5 / 2


@precision_aware
def log_series_form(family: str, r: int, s: int, z) -> SeriesValue:
    """
    sum_{j >= 1} z^j X_{rj+s} / j in logarithms.

    F:  -F_s/2 log(1 - L_r z + (-1)^r z^2) - L_s/(2 sqrt5) log((1 - alpha^r z)/(1 - beta^r z))
    L:  -L_s/2 log(1 - L_r z + (-1)^r z^2) - F_s sqrt5/2 log((1 - alpha^r z)/(1 - beta^r z))

    Raises
    ------
    DomainError
        When a real log argument is not positive.
    """
    family = _linear_only(family, 'log_series_form')
    spec = SeriesSpec(family, r, s, 1, z=z)
    x = spec.z_value()
    if not isinstance(x, Fraction):
        x = to_mp(x)
    alpha_r, beta_r = power_split(r, current_constants())
    norm = -1 if r % 2 else 1
    even, odd = _log_weights(family, s)
    quadratic = 1 - lucas(r) * x + norm * x * x
    ratio = (1 - alpha_r * to_mp(x)) / (1 - beta_r * to_mp(x)) if x != 0 else mpf(1)
    value = -even * _log(quadratic, '1 - L_r z + (-1)^r z^2') - odd * _log(ratio, '(1 - alpha^r z)/(1 - beta^r z)')
    return SeriesValue(_finish(value), Method.LOG_FORM, 0, spec, _regularized(spec))


@precision_aware
def trig_series_form(family: str, r: int, s: int, z, x, part: str) -> SeriesValue:
    """
    sum_{j >= 1} z^j cos(jx) X_{rj+s} / j or the sine analog, z and x real.

    With A = 1 - 2 alpha^r z cos x + alpha^2r z^2, B the same with beta, and

        P = z^4 - (-1)^r 2 L_r z^3 cos x + (L_2r + (-1)^r 4 cos^2 x) z^2 - 2 L_r z cos x + 1 = A B

    the cosine series is -u/2 log P + v/2 log(B/A) and the sine series is
    u (t_a + t_b) + v (t_a - t_b), where (u, v) are the log-form weights of
    :func:`log_series_form` and

        t_a - t_b = atan2(F_r sqrt5 z sin x, 1 - L_r z cos x + (-1)^r z^2)
        t_a + t_b = atan2(L_r z sin x - (-1)^r z^2 sin 2x, 1 - L_r z cos x + (-1)^r z^2 cos 2x)
    """
    family = _linear_only(family, 'trig_series_form')
    spec = SeriesSpec(family, r, s, 1, z=z, weight=Weight.TRIG, x=x, part=part)
    if not spec.z_is_real():
        raise DomainError(f"trig_series_form needs real z, got {spec.z}")
    zz = to_mp(spec.z_value())
    angle = spec.x_value()
    cos_x, sin_x = mp.cos(angle), mp.sin(angle)
    norm = -1 if r % 2 else 1
    even, odd = _log_weights(family, s)
    l_r = lucas(r)

    if spec.part == Part.COS:
        alpha_r, beta_r = power_split(r, current_constants())
        a = 1 - 2 * alpha_r * zz * cos_x + alpha_r ** 2 * zz ** 2
        b = 1 - 2 * beta_r * zz * cos_x + beta_r ** 2 * zz ** 2
        quartic = (zz ** 4 - norm * 2 * l_r * zz ** 3 * cos_x
                   + (lucas(2 * r) + norm * 4 * cos_x ** 2) * zz ** 2
                   - 2 * l_r * zz * cos_x + 1)
        value = -even / 2 * _log(quartic, 'quartic') + odd / 2 * (_log(b, 'B') - _log(a, 'A'))
    else:
        diff = mp.atan2(fib(r) * current_constants().sqrt5 * zz * sin_x, 1 - l_r * zz * cos_x + norm * zz ** 2)
        total = mp.atan2(l_r * zz * sin_x - norm * zz ** 2 * mp.sin(2 * angle),
                         1 - l_r * zz * cos_x + norm * zz ** 2 * mp.cos(2 * angle))
        value = even * total + odd * diff
    return SeriesValue(value, Method.TRIG_FORM, 0, spec, _regularized(spec))


# CLI method names
METHODS = ('auto', 'direct', 'polylog', 'bernoulli', 'abel', 'quarter', 'gf', 'log', 'trig')


@precision_aware
def evaluate(spec: SeriesSpec, method: str = 'auto') -> SeriesValue:
    """
    Evaluate ``spec`` by a named method.

    ``auto`` sums directly inside the convergence region and uses the polylog
    form outside it. The remaining names map to :func:`direct_sum`,
    :func:`polylog_form`, :func:`bernoulli_form`,
    :func:`polyfib.fibseries.abel.abel_regularized_sum`,
    :func:`quarter_series_form`, :func:`generating_function`,
    :func:`log_series_form` and :func:`trig_series_form`.
    """
    from .abel import abel_regularized_sum
    from .direct import direct_sum

    if method not in METHODS:
        raise ValueError(f"Invalid method {method!r}. Expected one of: {', '.join(METHODS)}")
    if method == 'auto':
        method = 'direct' if spec.in_region() else 'polylog'
    logger.debug(f"evaluate {spec.label()} by {method}")

    if method == 'direct':
        return direct_sum(spec)
    if method == 'polylog':
        return polylog_form(spec)
    if method == 'bernoulli':
        if spec.weight == Weight.QUARTER:
            if spec.s != 0:
                raise DomainError("the quarter Bernoulli form needs s = 0")
            return quarter_series_form(spec.family, spec.r, spec.k)
        return bernoulli_form(spec)
    if method == 'abel':
        return abel_regularized_sum(spec)
    if method == 'quarter':
        if spec.weight != Weight.QUARTER or spec.s != 0:
            raise DomainError("method 'quarter' needs the quarter weight with s = 0")
        return quarter_series_form(spec.family, spec.r, spec.k)

    if spec.weight not in (Weight.PLAIN, Weight.TRIG) and method in ('gf', 'log', 'trig'):
        raise DomainError(f"method {method!r} needs the plain or trig weight")
    if method == 'gf':
        if spec.k != 0 or spec.weight != Weight.PLAIN:
            raise DomainError("method 'gf' needs k = 0 and the plain weight")
        return generating_function(spec.family, spec.r, spec.s, spec.z, spec.start)
    if method == 'log':
        if spec.k != 1 or spec.weight != Weight.PLAIN:
            raise DomainError("method 'log' needs k = 1 and the plain weight")
        return log_series_form(spec.family, spec.r, spec.s, spec.z)
    if spec.k != 1 or spec.weight != Weight.TRIG:
        raise DomainError("method 'trig' needs k = 1 and the trig weight")
    return trig_series_form(spec.family, spec.r, spec.s, spec.z, spec.x, spec.part)
