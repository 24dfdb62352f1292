# polyfib/fibseries/abel.py
"""
Abel-type oracle for regularized series.

The series is read as h(v) = sum_j d_j v^j at v = 1, with exact rational
d_j = w_j a_j / j^k. The singularities of h are the points 1/(b_i z) given
by the exponential bases of the coefficients. The substitution

    v = 4 R u / (1 - u)^2

maps the unit disk onto the plane cut along (-inf, -R], so choosing R below
every negative singularity makes h analytic in |u| < 1 apart from the images
of positive singularities beyond v = 1. The re-expanded coefficients

    g_n = sum_{j=1}^{n} d_j (4R)^j C(n+j-1, n-j)

are exact. The Abel means A(x) = sum_n g_n (x u*)^n, u* the preimage of
v = 1, are taken at x_m = 1 - 2^-m and Neville-extrapolated to x = 1.

The oracle never calls the polylog or Bernoulli code; it shares only the
coefficient sequence with them.
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional, Tuple

from mpmath import mp, mpf

from ..seqcore import term_sequence
from ..utils import (ConvergenceError, DomainError, check_prec, rational_to_mpf,
                     working_precision)
from .spec import Method, SeriesSpec, SeriesValue, Weight

logger = logging.getLogger(__name__)

_RADIUS_DENOMINATOR = 1024


def _sign(spec: SeriesSpec) -> Tuple[Fraction, int]:
    """(z, sign) with value = sign * sum a_j z^j / j^k."""
    if spec.weight == Weight.ALTERNATING:
        return Fraction(-1), -1
    if spec.weight != Weight.PLAIN:
        raise DomainError(f"The Abel oracle covers the plain and alternating weights, got {spec.weight}")
    z = spec.z_value()
    if not isinstance(z, (int, Fraction)):
        raise DomainError(f"The Abel oracle needs a rational real z, got {spec.z}")
    return Fraction(z), 1


def _singularities(spec: SeriesSpec, z: Fraction) -> List[mpf]:
    """Real singular points 1/(b_i z) of h."""
    from .closed_forms import decompose

    points = []
    for coef, base in decompose(spec.family, spec.r, spec.s):
        if coef == 0:
            continue
        points.append(1 / (base * rational_to_mpf(z)))
    return points


def conformal_radius(points: List[mpf]) -> Fraction:
    """
    Rational R at or below every negative singularity's distance.

    Positive singularities must lie beyond v = 1; one in (0, 1] would put the
    regularized value on a branch cut.
    """
    for p in points:
        if 0 < p <= 1:
            raise DomainError(f"Singularity at v = {mp.nstr(p, 10)} in (0, 1]: no real Abel value")
    negatives = [-p for p in points if p < 0]
    if not negatives:
        return Fraction(1)
    nearest = min(negatives)
    den = _RADIUS_DENOMINATOR
    while mp.floor(nearest * den) < 1:
        den *= 2
    return Fraction(int(mp.floor(nearest * den)), den)


def unit_preimage(radius: Fraction) -> mpf:
    """u* in (0, 1) with 4 R u* / (1 - u*)^2 = 1."""
    r = rational_to_mpf(radius)
    return 1 + 2 * r - 2 * mp.sqrt(r + r * r)


def conformal_coefficients(d: List[Fraction], radius: Fraction) -> List[Fraction]:
    """g_0 .. g_N from d_1 .. d_N (g_0 = 0)."""
    n_max = len(d)
    scaled = [Fraction(0)] + [d[j - 1] * (4 * radius) ** j for j in range(1, n_max + 1)]
    g = [Fraction(0)]
    for n in range(1, n_max + 1):
        g.append(sum(scaled[j] * math.comb(n + j - 1, n - j) for j in range(1, n + 1)))
    return g


def _abel_mean(g: List[mpf], t: mpf) -> Tuple[mpf, mpf]:
    """sum g_n t^n and an estimate of the omitted tail."""
    total = mpf(0)
    power = mpf(1)
    last = []
    for coefficient in g:
        term = coefficient * power
        total += term
        last.append(abs(term))
        power *= t
    tail = max(last[-4:]) if len(last) >= 4 else mpf(0)
    return total, tail


def neville(nodes: List[mpf], values: List[mpf]) -> List[mpf]:
    """Successive extrapolations to 0 of the polynomial through (nodes, values)."""
    table = list(values)
    estimates = [table[0]]
    n = len(nodes)
    for level in range(1, n):
        for i in range(n - level):
            h_i, h_j = nodes[i], nodes[i + level]
            table[i] = (h_i * table[i + 1] - h_j * table[i]) / (h_i - h_j)
        estimates.append(table[0])
    return estimates


def abel_regularized_sum(spec: SeriesSpec, levels: Optional[int] = None, prec: Optional[int] = None,
                         tolerance: Optional[float] = None) -> SeriesValue:
    """
    Abel value of ``spec`` from extrapolated Abel means.

    Parameters
    ----------
    spec : SeriesSpec
        Plain weight with rational z, or the alternating weight.
    levels : int, optional
        Number of radii x_m = 1 - 2^-m, m = 2 .. levels + 1 (at least 4).
        Defaults to setting ``abel.levels``.
    prec : int, optional
        Working precision; defaults to setting ``abel.prec``.
    tolerance : float, optional
        Largest accepted extrapolation estimate; defaults to ``abel.tolerance``.

    Returns
    -------
    SeriesValue
        method ``abel_oracle``; error_estimate is the larger of the last Neville
        difference and the truncation estimate.

    Raises
    ------
    DomainError
        Quarter/trig weights, irrational or complex z, or a singularity in (0, 1].
    ConvergenceError
        When the extrapolation table does not settle below the tolerance.

    Example
    -------
    ::

        abel_regularized_sum(SeriesSpec('L', r=2, k=2, weight='alternating'), levels=8)
    """
    from ..config import get_setting

    levels = int(levels if levels is not None else get_setting('abel.levels', 8))
    if levels < 4:
        raise ValueError(f"levels must be at least 4, got {levels}")
    prec = check_prec(prec if prec is not None else get_setting('abel.prec', 64))
    tolerance = mpf(tolerance if tolerance is not None else get_setting('abel.tolerance', 1e-6))

    with working_precision(prec):
        z, sign = _sign(spec)
        if z == 0:
            return SeriesValue(mpf(0), Method.ABEL_ORACLE, 0, spec, False)
        radius = conformal_radius(_singularities(spec, z))
        u_star = unit_preimage(radius)
        limit = _analytic_radius(_singularities(spec, z), radius)
        if u_star >= limit:
            raise DomainError("Abel mean at v = 1 lies outside the disk of the conformal series")

        ratio = u_star / limit
        n_terms = int((mp.prec + 16) / -mp.log(ratio, 2)) + 8
        cap = int(get_setting('max_series_terms', 2000000))
        n_terms = min(n_terms, 4000, cap)
        logger.debug(f"Abel oracle {spec.label()}: R = {radius}, u* = {mp.nstr(u_star, 8)}, {n_terms} terms")

        coefficients = term_sequence(spec.family, spec.r, spec.s)
        d = [Fraction(next(coefficients)) * z ** j / Fraction(j) ** spec.k for j in range(1, n_terms + 1)]
        g = [rational_to_mpf(x) for x in conformal_coefficients(d, radius)]

        nodes, values, truncation = [], [], mpf(0)
        for m in range(2, levels + 2):
            h = mp.ldexp(1, -m)
            mean, tail = _abel_mean(g, (1 - h) * u_star)
            nodes.append(h)
            values.append(mean)
            truncation = max(truncation, tail)
        estimates = neville(nodes, values)
        diffs = [abs(estimates[i] - estimates[i - 1]) for i in range(1, len(estimates))]
        error = max(diffs[-1], truncation)
        if error > tolerance:
            trend = 'decreasing' if diffs[-1] < diffs[0] else 'not decreasing'
            raise ConvergenceError(f"Abel extrapolation for {spec.label()} did not settle: "
                                   f"estimate {mp.nstr(error, 5)} > tolerance {mp.nstr(tolerance, 5)}, "
                                   f"differences {trend}")
        value = sign * estimates[-1]
    logger.debug(f"Abel oracle {spec.label()}: {mp.nstr(value, 15)} +/- {mp.nstr(error, 3)}")
    return SeriesValue(+value, Method.ABEL_ORACLE, error, spec, not spec.in_region())


def _analytic_radius(points: List[mpf], radius: Fraction) -> mpf:
    """Radius of convergence of the u-series: 1, or the nearest image of a positive singularity."""
    r = rational_to_mpf(radius)
    nearest = mpf(1)
    for p in points:
        if p > 0:
            # preimage of p on (0, 1)
            q = p / (4 * r)
            u = 1 + 1 / (2 * q) - mp.sqrt(1 / q + 1 / (4 * q * q))
            nearest = min(nearest, u)
    return nearest
