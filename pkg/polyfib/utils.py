# polyfib/utils.py
"""
Shared helpers: the exception hierarchy, precision plumbing and argument parsing.
"""

import functools
import logging
import math
import re
from contextlib import contextmanager
from contextvars import ContextVar
from fractions import Fraction
from typing import Callable, Iterator, Optional, Union

from mpmath import mp, mpc, mpf

logger = logging.getLogger(__name__)

MIN_PREC = 64

Number = Union[int, Fraction, float, mpf, mpc]


class PolyfibError(ValueError):
    """Base class for every error raised by polyfib."""


class PrecisionError(PolyfibError):
    """Requested working precision is below the supported minimum."""


class DomainError(PolyfibError):
    """Argument lies outside the domain of the requested operation."""


class PoleError(DomainError):
    """Evaluation at a pole."""


class DivergenceError(DomainError):
    """Direct summation requested outside the region where it converges."""


class ParityError(DomainError):
    """Parity hypotheses of a Bernoulli closed form are violated."""


class ConvergenceError(PolyfibError):
    """An extrapolation table or iteration failed to settle."""


class UnknownIdentityError(PolyfibError, KeyError):
    """Unknown registry id, named constant or special value."""

    def __str__(self):
        return str(self.args[0]) if self.args else ''


def check_prec(prec: int) -> int:
    """Validate a working precision in bits and return it as int."""
    try:
        prec = int(prec)
    except (TypeError, ValueError):
        raise PrecisionError(f"Precision must be an integer number of bits, got {prec!r}")
    if prec < MIN_PREC:
        raise PrecisionError(f"Precision must be at least {MIN_PREC} bits, got {prec}")
    return prec


def guard_bits() -> int:
    from .config import get_setting
    return int(get_setting('guard_bits', 32))


@contextmanager
def working_precision(prec: int) -> Iterator[int]:
    """
    Enter mpmath working precision ``prec`` plus the configured guard bits.

    Yields the validated target precision so callers can round results on exit
    with :func:`round_to`.
    """
    prec = check_prec(prec)
    with mp.workprec(prec + guard_bits()):
        yield prec


def round_to(x, prec: int):
    """Round an mpf/mpc to ``prec`` bits."""
    with mp.workprec(prec):
        return +x


# target precision of the outermost precision-aware call in this context
_target_prec: ContextVar[Optional[int]] = ContextVar('polyfib_target_prec', default=None)


def target_prec() -> int:
    """
    Target precision of the evaluation in progress.

    Outside any precision-aware call this is the active mpmath precision less
    the guard bits (never below MIN_PREC).
    """
    target = _target_prec.get()
    if target is not None:
        return target
    return max(MIN_PREC, mp.prec - guard_bits())


def rounded(result, prec: int):
    """Round a result (mp number, value object with ``rounded`` or tuple of them) to ``prec`` bits."""
    if hasattr(result, 'rounded'):
        return result.rounded(prec)
    if isinstance(result, (mpf, mpc)):
        return round_to(result, prec)
    if isinstance(result, tuple) and not hasattr(result, '_fields'):
        return tuple(rounded(item, prec) for item in result)
    return result


def precision_aware(func: Callable) -> Callable:
    """
    Give an evaluation function an optional ``prec`` keyword.

    The outermost call enters working precision (``prec`` or the configured
    default plus guard bits) and rounds its result to the target precision.
    Nested calls without ``prec`` run at the precision already active, so
    internal composition never rounds intermediate values.
    """
    @functools.wraps(func)
    def wrapper(*args, prec: Optional[int] = None, **kwargs):
        if prec is None and _target_prec.get() is not None:
            return func(*args, **kwargs)
        if prec is None:
            from .config import get_default_prec
            prec = get_default_prec()
        with working_precision(prec) as target:
            token = _target_prec.set(target)
            try:
                result = func(*args, **kwargs)
            finally:
                _target_prec.reset(token)
        return rounded(result, target)
    return wrapper


def real_if_close(x, prec: int, context: str = ''):
    """
    Return the real part of ``x`` when its imaginary part is negligible.

    The imaginary part must stay below 2**(-prec+16) relative to the real part
    (absolute when the real part vanishes), otherwise a DomainError is raised.
    """
    if not isinstance(x, mpc):
        return x
    scale = abs(x.real) if x.real != 0 else mpf(1)
    bound = mp.ldexp(1, -prec + 16) * scale
    if abs(x.imag) > bound:
        raise DomainError(f"Expected a real value{' for ' + context if context else ''}, "
                          f"imaginary part is {mp.nstr(x.imag, 8)}")
    return x.real


def rational_to_mpf(q: Union[int, Fraction]) -> mpf:
    """Convert an exact rational to mpf at the current working precision."""
    q = Fraction(q)
    if q.denominator == 1:
        return mpf(q.numerator)
    return mpf(q.numerator) / q.denominator


def to_mp(x: Number):
    """Coerce ints, Fractions, floats, complex and mp numbers to mpf/mpc."""
    if isinstance(x, (mpf, mpc)):
        return x
    if isinstance(x, Fraction):
        return rational_to_mpf(x)
    if isinstance(x, complex):
        return mpc(x)
    return mpf(x)


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse '1/3', '-0.25', '2' into an exact Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"Not a rational number: {text!r}")


_PI_MULTIPLE = re.compile(r'^(?P<sign>-)?(?P<num>\d+(?:/\d+)?)?\s*\*?\s*pi(?:\s*/\s*(?P<den>\d+))?$')


def parse_real(text: Union[str, int, float, Fraction]):
    """
    Parse a real argument. Accepts rationals/decimals and multiples of pi
    such as 'pi/3', '2pi/5', '-pi/2'. Rationals come back exact (Fraction),
    pi multiples as mpf at the current precision.
    """
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, float):
        return Fraction(text)
    s = str(text).strip().replace(' ', '')
    m = _PI_MULTIPLE.match(s)
    if m:
        coef = Fraction(m.group('num') or 1)
        if m.group('den'):
            coef /= int(m.group('den'))
        if m.group('sign'):
            coef = -coef
        return rational_to_mpf(coef) * mp.pi
    return parse_rational(s)


def parse_complex(text: str):
    """
    Parse the CLI form ``RE[,IM]``. Returns a Fraction when the argument is
    rational and real, otherwise an mpf/mpc at the current precision.
    """
    parts = [p for p in str(text).split(',')]
    if len(parts) > 2:
        raise ValueError(f"Expected RE or RE,IM, got {text!r}")
    re_part = parse_real(parts[0])
    if len(parts) == 1 or parse_real(parts[1]) == 0:
        return re_part
    return mpc(to_mp(re_part), to_mp(parse_real(parts[1])))


def default_digits(prec: int) -> int:
    """Significant decimal digits printed for a value computed at ``prec`` bits."""
    from .config import get_setting
    digits = get_setting('output_digits', None)
    if digits:
        return int(digits)
    return max(10, prec // 4)


def format_value(x, prec: int, digits: Optional[int] = None) -> str:
    """Decimal string for an mpf/mpc/int/Fraction value."""
    if isinstance(x, (int, Fraction)):
        return str(x)
    digits = digits or default_digits(prec)
    with mp.workprec(prec + 8):
        if isinstance(x, mpc) and x.imag != 0:
            return mp.nstr(x, digits)
        if isinstance(x, mpc):
            x = x.real
        return mp.nstr(x, digits)


def split_parts(x):
    """(real, imag) pair of an mpf/mpc."""
    if isinstance(x, mpc):
        return x.real, x.imag
    return to_mp(x), mpf(0)


def bits_of(x) -> float:
    """log2 of |x| as float (-inf for zero); used for tolerances in log messages."""
    x = abs(x)
    if x == 0:
        return -math.inf
    return float(mp.log(x, 2))
