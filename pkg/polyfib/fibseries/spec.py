# polyfib/fibseries/spec.py
"""
SeriesSpec and SeriesValue: the weighted Fibonacci/Lucas series

    sum_{j >= start} w_j a_j / j^k

where a_j comes from :func:`polyfib.seqcore.term_sequence` and the weight w_j
is one of the :class:`Weight` kinds.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, Optional

from mpmath import mp, mpc, mpf

from ..polylog.core import Side
from ..seqcore import FAMILIES, current_constants
from ..utils import format_value, parse_complex, parse_rational, parse_real, round_to, split_parts, to_mp

logger = logging.getLogger(__name__)


class Family:
    """Coefficient families: a_j = F_{rj+s}, L_{rj+s}, F_{rj}F_{sj}, F_{rj}L_{sj}, L_{rj}L_{sj}."""
    F = 'F'
    L = 'L'
    FF = 'FF'
    FL = 'FL'
    LL = 'LL'

    ALL = FAMILIES
    PRODUCTS = (FF, FL, LL)


class Weight:
    """
    Weights w_j.

    plain        z^j
    alternating  (-1)^(j-1)
    quarter      -cos(j pi / 2): +1 at j = 2 mod 4, -1 at j = 0 mod 4
    trig         z^j cos(jx) or z^j sin(jx), z and x real
    """
    PLAIN = 'plain'
    ALTERNATING = 'alternating'
    QUARTER = 'quarter'
    TRIG = 'trig'

    ALL = (PLAIN, ALTERNATING, QUARTER, TRIG)


class Part:
    COS = 'cos'
    SIN = 'sin'

    ALL = (COS, SIN)


class Method:
    """Method tags carried by every SeriesValue."""
    DIRECT = 'direct'
    POLYLOG_FORM = 'polylog_form'
    BERNOULLI_FORM = 'bernoulli_form'
    RATIONAL_GF = 'rational_gf'
    LOG_FORM = 'log_form'
    TRIG_FORM = 'trig_form'
    ABEL_ORACLE = 'abel_oracle'
    NAMED_CONSTANT = 'named_constant'

    ALL = (DIRECT, POLYLOG_FORM, BERNOULLI_FORM, RATIONAL_GF, LOG_FORM, TRIG_FORM,
           ABEL_ORACLE, NAMED_CONSTANT)


def _choice(value: str, allowed, what: str) -> str:
    if value not in allowed:
        raise ValueError(f"Invalid {what} {value!r}. Expected one of: {', '.join(allowed)}")
    return value


def _exact_or_text(value):
    """Keep rationals exact; other strings are resolved at evaluation time."""
    if value is None or isinstance(value, (int, Fraction, mpf, mpc, complex, float)):
        return value
    try:
        return parse_rational(value)
    except ValueError:
        return str(value).strip()


class SeriesSpec:
    """
    One weighted Fibonacci/Lucas series.

    Parameters
    ----------
    family : str
        One of F, L, FF, FL, LL.
    r, s : int
        Index multipliers. For F and L the coefficient is X_{rj+s}; for the
        product families it is X_{rj} Y_{sj}.
    k : int
        Power of j in the denominator (any integer).
    z : optional
        Ratio of the plain and trig weights. Rationals (including strings like
        ``'1/2'``) stay exact; ``'RE,IM'`` strings and pi multiples are parsed
        at evaluation precision. Fixed to -1 for ``alternating``.
    weight : str
        One of :class:`Weight`.
    x : optional
        Angle of the trig weight, e.g. ``'pi/3'``.
    part : str, optional
        ``cos`` or ``sin`` for the trig weight.
    start : int
        First index, 1 or 0. ``start=0`` adds the j = 0 term and needs k = 0
        with the plain weight.
    side : str
        Side of the cut for polylog arguments on (1, inf).

    Example
    -------
    ::

        spec = SeriesSpec('L', r=1, k=2, z='1/2')
        alt = SeriesSpec('F', r=2, k=3, weight='alternating')
    """

    __slots__ = ('family', 'r', 's', 'k', 'z', 'weight', 'x', 'part', 'start', 'side')

    def __init__(self, family: str, r: int, s: int = 0, k: int = 1, z=None,
                 weight: str = Weight.PLAIN, x=None, part: Optional[str] = None,
                 start: int = 1, side: str = Side.UPPER):
        self.family = _choice(str(family).upper(), Family.ALL, 'family')
        self.r = int(r)
        self.s = int(s)
        self.k = int(k)
        self.weight = _choice(weight, Weight.ALL, 'weight')
        self.side = Side.check(side)
        self.start = int(start)
        self.part = None
        self.x = None

        if self.weight == Weight.ALTERNATING:
            if z is not None and _exact_or_text(z) != -1:
                raise ValueError(f"The alternating weight fixes z = -1, got z = {z}")
            self.z = Fraction(-1)
        elif self.weight == Weight.QUARTER:
            if z is not None:
                raise ValueError("The quarter weight takes no z")
            self.z = None
        else:
            if z is None:
                raise ValueError(f"The {self.weight} weight needs z")
            self.z = _exact_or_text(z)

        if self.weight == Weight.TRIG:
            if x is None or part is None:
                raise ValueError("The trig weight needs x and part (cos|sin)")
            self.x = _exact_or_text(x)
            self.part = _choice(part, Part.ALL, 'part')
        elif x is not None or part is not None:
            raise ValueError(f"x and part only apply to the trig weight, not {self.weight}")

        if self.start not in (0, 1):
            raise ValueError(f"start must be 0 or 1, got {self.start}")
        if self.start == 0 and (self.k != 0 or self.weight != Weight.PLAIN):
            raise ValueError("start=0 is only defined for k = 0 with the plain weight")

    @property
    def is_product(self) -> bool:
        return self.family in Family.PRODUCTS

    def z_value(self):
        """z at the active precision (exact Fraction when rational)."""
        if isinstance(self.z, str):
            return parse_complex(self.z)
        return self.z

    def x_value(self):
        if isinstance(self.x, str):
            return to_mp(parse_real(self.x))
        return to_mp(self.x)

    def z_is_real(self) -> bool:
        if self.weight == Weight.QUARTER:
            return False
        z = self.z_value()
        return not isinstance(z, (mpc, complex)) or z.imag == 0

    def growth_exponent(self) -> int:
        """e with |a_j| <= C alpha^(e j)."""
        return abs(self.r) + abs(self.s) if self.is_product else abs(self.r)

    def region_ratio(self) -> mpf:
        """
        rho = |z| alpha^e; direct summation converges iff rho < 1.

        The quarter and alternating weights have |z| = 1.
        """
        alpha_e = current_constants().alpha ** self.growth_exponent()
        if self.weight in (Weight.ALTERNATING, Weight.QUARTER):
            return alpha_e
        return abs(to_mp(self.z_value())) * alpha_e

    def in_region(self) -> bool:
        return self.region_ratio() < 1

    def coefficient_bound(self) -> mpf:
        """C with |a_j| <= C alpha^(e j) for j >= 1."""
        c = current_constants()
        if self.is_product:
            return mpf(2) ** self.family.count('L')
        base = c.alpha ** abs(self.s)
        return 2 * base if self.family == Family.L else base

    def swapped(self) -> 'SeriesSpec':
        """The same product series with r and s exchanged (FF and LL are symmetric)."""
        return SeriesSpec(self.family, self.s, self.r, self.k, None if self.weight != Weight.PLAIN else self.z,
                          self.weight, self.x, self.part, self.start, self.side)

    def label(self) -> str:
        if self.is_product:
            coeff = f"{self.family[0]}_{{{self.r}j}}{self.family[1]}_{{{self.s}j}}"
        else:
            shift = f"{self.s:+d}" if self.s else ''
            coeff = f"{self.family}_{{{self.r}j{shift}}}"
        weight = {
            Weight.PLAIN: f"({self.z})^j",
            Weight.ALTERNATING: "(-1)^(j-1)",
            Weight.QUARTER: "-cos(j pi/2)",
            Weight.TRIG: f"({self.z})^j {self.part}(j {self.x})",
        }[self.weight]
        return f"sum_{{j>={self.start}}} {weight} {coeff} / j^{self.k}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            'family': self.family,
            'r': self.r,
            's': self.s,
            'k': self.k,
            'z': None if self.z is None else str(self.z),
            'weight': self.weight,
            'x': None if self.x is None else str(self.x),
            'part': self.part,
            'start': self.start,
        }

    def __eq__(self, other):
        return isinstance(other, SeriesSpec) and self.to_dict() == other.to_dict() and self.side == other.side

    def __hash__(self):
        return hash(tuple(self.to_dict().values()))

    def __repr__(self):
        fields = ', '.join(f"{k}={v!r}" for k, v in self.to_dict().items() if v is not None)
        return f"SeriesSpec({fields})"


class SeriesValue:
    """
    Value of a series together with the method that produced it.

    Attributes
    ----------
    value : mpf or mpc
    method : str
        One of :class:`Method`.
    error_estimate : mpf
        Certified tail bound for ``direct``; propagated polylog tail bounds for
        closed forms; the extrapolation estimate for ``abel_oracle``.
    regularized : bool
        True when the defining series diverges classically and the value is
        its analytic continuation.
    """

    __slots__ = ('value', 'method', 'error_estimate', 'spec', 'regularized')

    def __init__(self, value, method: str, error_estimate=0, spec: Optional[SeriesSpec] = None,
                 regularized: bool = False):
        self.value = value
        self.method = method
        self.error_estimate = mpf(error_estimate)
        self.spec = spec
        self.regularized = regularized

    def rounded(self, prec: int) -> 'SeriesValue':
        return SeriesValue(round_to(self.value, prec), self.method, round_to(self.error_estimate, prec),
                           self.spec, self.regularized)

    def to_dict(self, prec: int, digits: Optional[int] = None) -> Dict[str, Any]:
        re_part, im_part = split_parts(self.value)
        result = self.spec.to_dict() if self.spec is not None else {}
        result.update({
            'value_re': format_value(re_part, prec, digits),
            'value_im': format_value(im_part, prec, digits),
            'method': self.method,
            'error_estimate': mp.nstr(self.error_estimate, 5),
            'regularized': self.regularized,
        })
        return result

    def __repr__(self):
        return f"SeriesValue({mp.nstr(self.value, 15)}, method={self.method!r}, error_estimate={mp.nstr(self.error_estimate, 3)})"
