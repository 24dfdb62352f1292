# tests/test_abel.py
from fractions import Fraction

import pytest
from mpmath import mp, mpf

from polyfib.fibseries import Method, SeriesSpec, direct_sum, polylog_form
from polyfib.fibseries.abel import (
    abel_regularized_sum, conformal_coefficients, conformal_radius, neville, unit_preimage,
)
from polyfib.utils import ConvergenceError, DomainError


class TestAbelOracle:
    """Regularized values from extrapolated Abel means."""

    def test_alternating_lucas(self, golden):
        """sum (-1)^(j-1) L_2j / j^2 = pi^2/6 + 2 log^2 alpha within 1e-6."""
        spec = SeriesSpec('L', 2, k=2, weight='alternating')
        result = abel_regularized_sum(spec)
        assert result.method == Method.ABEL_ORACLE
        assert result.regularized
        assert result.error_estimate <= 1e-6
        expected = golden['pi'] ** 2 / 6 + 2 * golden['la'] ** 2
        assert abs(result.value - expected) < 1e-6

    def test_matches_polylog_form(self):
        """Alternating F_j at k = 2 agrees with the polylog form."""
        spec = SeriesSpec('F', 1, k=2, weight='alternating')
        result = abel_regularized_sum(spec, levels=8, prec=64)
        assert abs(result.value - polylog_form(spec, prec=64).value) < 1e-6

    def test_inside_region(self):
        """Inside the region the oracle reproduces the ordinary sum."""
        spec = SeriesSpec('F', 2, k=1, z='-1/4')
        result = abel_regularized_sum(spec)
        assert not result.regularized
        assert abs(result.value - direct_sum(spec, prec=64).value) < 1e-6

    def test_zero_ratio(self):
        """z = 0 is exactly 0."""
        assert abel_regularized_sum(SeriesSpec('L', 1, k=2, z=0)).value == 0

    def test_tight_tolerance(self):
        """A tolerance below the working precision cannot be met."""
        spec = SeriesSpec('L', 2, k=2, weight='alternating')
        with pytest.raises(ConvergenceError, match="did not settle"):
            abel_regularized_sum(spec, tolerance=1e-60)

    def test_singularity_on_segment(self):
        """L_j at z = 1 has a singularity at 1/alpha in (0, 1]."""
        with pytest.raises(DomainError, match=r"in \(0, 1\]"):
            abel_regularized_sum(SeriesSpec('L', 1, k=2, z=1))

    @pytest.mark.parametrize('spec', [
        SeriesSpec('L', 2, k=2, weight='quarter'),
        SeriesSpec('L', 1, k=1, z='1/2', weight='trig', x='pi/3', part='cos'),
        SeriesSpec('L', 1, k=2, z='pi/4'),
    ])
    def test_unsupported(self, spec):
        """Quarter and trig weights and irrational z are outside the oracle."""
        with pytest.raises(DomainError):
            abel_regularized_sum(spec)

    def test_levels(self):
        """At least four radii are needed."""
        with pytest.raises(ValueError, match="at least 4"):
            abel_regularized_sum(SeriesSpec('L', 2, k=2, weight='alternating'), levels=3)


class TestConformalMap:
    """Pieces of the conformal re-expansion."""

    def test_coefficients(self):
        """A single d_1 = 1 at R = 1/4 maps to g = [0, 1]."""
        assert conformal_coefficients([Fraction(1)], Fraction(1, 4)) == [0, 1]

    def test_coefficients_exact(self):
        """g_2 = d_1 4R C(2, 1) + d_2 (4R)^2."""
        g = conformal_coefficients([Fraction(1), Fraction(1, 2)], Fraction(1, 2))
        assert g == [0, 2, Fraction(2 * 2 + 2, 1)]

    def test_unit_preimage(self):
        """4 R u* / (1 - u*)^2 = 1."""
        with mp.workprec(128):
            for radius in (Fraction(1, 4), Fraction(391, 1024), Fraction(3)):
                u = unit_preimage(radius)
                assert 0 < u < 1
                assert abs(4 * mpf(radius.numerator) / radius.denominator * u / (1 - u) ** 2 - 1) < mp.ldexp(1, -110)

    def test_radius(self):
        """R sits at or below the nearest negative singularity."""
        with mp.workprec(96):
            radius = conformal_radius([mpf(-2.5), mpf(-0.4), mpf(3)])
            assert radius <= Fraction(2, 5)
            assert radius > Fraction(2, 5) - Fraction(1, 1024)
            assert conformal_radius([mpf(2)]) == 1

    def test_radius_rejects_segment(self):
        """A positive singularity in (0, 1] is refused."""
        with pytest.raises(DomainError):
            conformal_radius([mpf(-2), mpf('0.5')])

    def test_neville_linear(self):
        """Extrapolating 3 + 2h to h = 0 gives 3."""
        nodes = [mpf(1), mpf(2), mpf(3)]
        estimates = neville(nodes, [3 + 2 * h for h in nodes])
        assert estimates[-1] == 3
