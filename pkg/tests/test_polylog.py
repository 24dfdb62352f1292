# tests/test_polylog.py
import random
from fractions import Fraction

import pytest
from mpmath import mp, mpc, mpf

from polyfib.bernoulli import zeta_int
from polyfib.polylog import (
    DILOG_EQUATIONS, FUNCTIONAL_DOMAINS, SPECIAL_VALUES, TRILOG_EQUATIONS, Path, PolylogQuery, Side,
    dilog_functional_equation, get_special, golden_argument, li, li1, li1_polar_parts,
    li_inversion, li_log_expansion, li_nonpositive, li_series, li_sum, re_li_on_imaginary_axis,
    special_value, special_value_polylog, trilog_functional_equation,
)
from polyfib.utils import DivergenceError, DomainError, PoleError, UnknownIdentityError, to_mp

from tests.conftest import close_to


class TestNonpositiveOrders:
    """Li_{-n}(z) as an exact rational function."""

    @pytest.mark.parametrize('n,expected', [(0, 1), (1, 2), (2, 6), (3, 26)])
    def test_half(self, n, expected):
        """Li_0(1/2) = 1, Li_-1(1/2) = 2, Li_-2(1/2) = 6, Li_-3(1/2) = 26."""
        assert li_nonpositive(n, Fraction(1, 2)) == expected

    def test_float_input(self, hp):
        """Non-rational input gives an mp number: Li_-1(z) = z/(1-z)^2."""
        z = mpf('0.3')
        assert close_to(li_nonpositive(1, z, prec=200), z / (1 - z) ** 2, 190)

    def test_matches_power_series(self, hp):
        """Li_{-n}(z) equals sum j^n z^j at seeded complex points with |z| < 1/2."""
        rng = random.Random(31)
        for _ in range(100):
            n = rng.randint(0, 6)
            z = mpc(rng.uniform(-0.35, 0.35), rng.uniform(-0.35, 0.35))
            expected = mp.fsum(mpf(j) ** n * z ** j for j in range(1, 400))
            assert close_to(li_nonpositive(n, z, prec=200), expected, 190), (n, z)

    def test_exact_power_series(self):
        """Exact rational values match exact partial sums to within the tail."""
        z = Fraction(-2, 7)
        partial = sum(Fraction(j) ** 4 * z ** j for j in range(1, 120))
        assert abs(li_nonpositive(4, z) - partial) < Fraction(1, 10 ** 50)

    def test_pole(self):
        """z = 1 is a pole."""
        with pytest.raises(PoleError):
            li_nonpositive(1, 1)


class TestSeries:
    """Direct summation li_series."""

    def test_alternating_unit(self, golden):
        """Li_2(-1) = -pi^2/12."""
        result = li_series(2, -1, prec=128)
        assert result.path == Path.DIRECT_SERIES
        assert close_to(result.value, -golden['pi'] ** 2 / 12, 124)

    def test_zero(self):
        """Li_k(0) = 0."""
        assert li_series(2, 0).value == 0

    def test_trilog_beta_squared(self, golden):
        """Li_3(beta^2) = 4/5 zeta(3) - 2 pi^2/15 log alpha + 2/3 log^3 alpha."""
        pi, la = golden['pi'], golden['la']
        expected = 4 * zeta_int(3) / 5 - 2 * pi ** 2 / 15 * la + 2 * la ** 3 / 3
        assert close_to(li_series(3, golden['beta'] ** 2, prec=192).value, expected, 186)

    def test_tail_bound(self):
        """The certified tail bound is below 2^-(prec+8) inside the disk."""
        result = li_series(2, Fraction(1, 2), prec=128)
        assert 0 < result.tail_bound < mp.ldexp(1, -128)

    def test_complex_argument(self, hp):
        """Complex z inside the disk agrees with mpmath."""
        z = mpc(0.3, 0.4)
        assert close_to(li_series(3, z, prec=160).value, mp.polylog(3, z), 150)

    def test_diverges_outside(self):
        """|z| > 1 raises DivergenceError."""
        with pytest.raises(DivergenceError, match="diverges"):
            li_series(2, 2)

    def test_order_one_on_circle(self):
        """k = 1 on |z| = 1 does not converge."""
        with pytest.raises(DivergenceError):
            li_series(1, -1)

    @pytest.mark.parametrize('z', [1, mpc(0, 1), mpc(0, -1)])
    def test_unit_circle_low_order(self, z):
        """On |z| = 1 away from -1 the dilog sum would need far more than max_series_terms."""
        with pytest.raises(DivergenceError, match="needs about 2\^"):
            li_series(2, z, prec=128)

    def test_unit_circle_high_order(self, hp):
        """High orders on |z| = 1 are summed with the integral bound."""
        result = li_series(10, mpc(0, 1), prec=64)
        assert 0 < result.tail_bound < mp.ldexp(1, -64)
        assert close_to(result.value, mp.polylog(10, mpc(0, 1)), 60)

    def test_order_below_one(self):
        """k < 1 is not a series case."""
        with pytest.raises(DomainError):
            li_series(0, Fraction(1, 2))


class TestLogarithm:
    """Li_1 and its polar parts."""

    def test_values(self, hp):
        """Li_1(1/2) = log 2, Li_1(-1) = -log 2, Li_1(0) = 0."""
        assert close_to(li1(Fraction(1, 2), prec=128), mp.log(2), 124)
        assert close_to(li1(-1, prec=128), -mp.log(2), 124)
        assert li1(0) == 0

    def test_pole(self):
        """z = 1 is a pole."""
        with pytest.raises(PoleError):
            li1(1)

    def test_polar_parts(self, hp):
        """Re and Im of Li_1(z e^(ix))."""
        assert li1_polar_parts(0, 1) == (0, 0)
        re_part, im_part = li1_polar_parts(Fraction(1, 2), 0, prec=128)
        assert close_to(re_part, mp.log(2), 124) and im_part == 0
        re_part, im_part = li1_polar_parts(Fraction(1, 2), mp.pi / 2, prec=128)
        assert close_to(re_part, -mp.log(mpf(5) / 4) / 2, 124)
        assert close_to(im_part, mp.atan(mpf(1) / 2), 124)

    def test_polar_parts_domain(self):
        """|z| >= 1 is rejected."""
        with pytest.raises(DomainError):
            li1_polar_parts(2, 0)


class TestLogExpansion:
    """Expansion of Li_k(e^u) in powers of u."""

    def test_at_one(self, golden):
        """Li_2(1) = zeta(2)."""
        assert close_to(li_log_expansion(2, 1, prec=128).value, golden['pi'] ** 2 / 6, 124)

    def test_beta_squared(self, golden):
        """Li_2(beta^2) = pi^2/15 - log^2 alpha."""
        expected = golden['pi'] ** 2 / 15 - golden['la'] ** 2
        result = li_log_expansion(2, golden['beta'] ** 2, prec=192)
        assert result.path == Path.LOG_EXPANSION
        assert close_to(result.value, expected, 186)

    def test_matches_series(self, hp):
        """Li_3(1/e) by expansion and by direct summation."""
        z = mp.exp(-1)
        assert close_to(li_log_expansion(3, z, prec=128).value, li_series(3, z, prec=128).value, 120)

    def test_path_agreement(self, hp):
        """Series and expansion agree at 200 random real points and orders 2..6."""
        rng = random.Random(2024)
        for _ in range(200):
            z = Fraction(rng.randint(50, 950), 1000) * rng.choice((-1, 1))
            k = rng.randint(2, 6)
            series = li_series(k, z, prec=128).value
            expansion = li_log_expansion(k, z, prec=128).value
            assert close_to(series, expansion, 128 - 20), (k, z)

    def test_cut_sides(self, golden):
        """Li_2(2) = pi^2/4 -/+ i pi log 2 below/above the cut."""
        pi = golden['pi']
        upper = li_log_expansion(2, 2, side=Side.UPPER, prec=128).value
        lower = li_log_expansion(2, 2, side=Side.LOWER, prec=128).value
        assert close_to(upper, mpc(pi ** 2 / 4, pi * mp.log(2)), 120)
        assert close_to(lower, mpc(pi ** 2 / 4, -pi * mp.log(2)), 120)

    def test_domain(self):
        """k >= 2 and |log z| < 2 pi."""
        with pytest.raises(DomainError, match="k >= 2"):
            li_log_expansion(1, Fraction(1, 2))
        with pytest.raises(DomainError, match="2 pi"):
            li_log_expansion(2, 1000)


class TestInversion:
    """Li_k(z) for real |z| > 1."""

    def test_minus_alpha(self, golden):
        """Li_2(-alpha) = -pi^2/10 - log^2 alpha."""
        expected = -golden['pi'] ** 2 / 10 - golden['la'] ** 2
        assert close_to(li_inversion(2, -golden['alpha'], prec=192).value, expected, 186)

    def test_pair_sum(self, golden):
        """Li_2(-alpha^2) + Li_2(-beta^2) = -pi^2/6 - 2 log^2 alpha."""
        alpha, beta = golden['alpha'], golden['beta']
        total = li_inversion(2, -alpha ** 2, prec=192).value + li_series(2, -beta ** 2, prec=192).value
        assert close_to(total, -golden['pi'] ** 2 / 6 - 2 * golden['la'] ** 2, 184)

    def test_trilog_pair(self, golden):
        """Li_3(-alpha) + Li_3(-beta) = zeta(3)/5 - pi^2/5 log alpha."""
        total = li_inversion(3, -golden['alpha'], prec=192).value + li_series(3, -golden['beta'], prec=192).value
        expected = zeta_int(3) / 5 - golden['pi'] ** 2 / 5 * golden['la']
        assert close_to(total, expected, 184)

    @pytest.mark.parametrize('k', [1, 2, 3, 4, 5])
    def test_real_below_minus_one(self, k):
        """For z < -1 the continuation is real."""
        value = li_inversion(k, Fraction(-7, 2), prec=128).value
        assert not isinstance(value, mpc) or abs(value.imag) <= mp.ldexp(abs(value.real), -128 + 16)

    def test_upper_side(self, golden):
        """Im Li_2(3 + i0) = pi log 3."""
        value = li_inversion(2, 3, side=Side.UPPER, prec=128).value
        assert close_to(value.imag, golden['pi'] * mp.log(3), 120)

    def test_domain(self):
        """Inside the unit disk or off the real axis is rejected."""
        with pytest.raises(DomainError, match=r"\|z\| > 1"):
            li_inversion(2, Fraction(1, 2))
        with pytest.raises(DomainError, match="real"):
            li_inversion(2, mpc(2, 1))


class TestDispatcher:
    """li() routes (k, z) to a path."""

    def test_rational_path(self):
        """Li_0(1/2) = 1 on the rational path."""
        result = li(0, Fraction(1, 2))
        assert result.path == Path.RATIONAL
        assert result.value == 1

    def test_beta(self, golden):
        """Li_2(beta) = -pi^2/15 + 1/2 log^2 alpha; Li_2(-beta) = pi^2/10 - log^2 alpha."""
        pi, la = golden['pi'], golden['la']
        result = li(2, golden['beta'], prec=192)
        assert result.path == Path.DIRECT_SERIES
        assert close_to(result.value, -pi ** 2 / 15 + la ** 2 / 2, 186)
        assert close_to(li(2, -golden['beta'], prec=192).value, pi ** 2 / 10 - la ** 2, 186)

    @pytest.mark.parametrize('k,z,path', [
        (-2, Fraction(1, 3), Path.RATIONAL),
        (1, Fraction(1, 3), Path.LOGARITHM),
        (1, 3, Path.INVERSION),
        (2, Fraction(1, 2), Path.DIRECT_SERIES),
        (2, Fraction(4, 5), Path.LOG_EXPANSION),
        (3, Fraction(-9, 10), Path.LOG_EXPANSION),
        (2, 1, Path.ZETA),
        (3, -1, Path.ZETA),
        (2, -3, Path.INVERSION),
    ])
    def test_routes(self, k, z, path):
        """Each case lands on its documented path."""
        assert li(k, z).path == path

    def test_consistent_with_path(self):
        """li() returns exactly what the chosen path returns."""
        assert li(2, Fraction(1, 2), prec=128).value == li_series(2, Fraction(1, 2), prec=128).value
        assert li(2, Fraction(4, 5), prec=128).value == li_log_expansion(2, Fraction(4, 5), prec=128).value
        assert li(3, -5, prec=128).value == li_inversion(3, -5, prec=128).value

    def test_unit_circle_avoids_series(self, golden):
        """li() takes Li_2(i) = -pi^2/48 + i G through the log expansion."""
        result = li(2, mpc(0, 1), prec=128)
        assert result.path == Path.LOG_EXPANSION
        assert close_to(result.value, mpc(-golden['pi'] ** 2 / 48, mp.catalan), 124)

    def test_zeta_at_minus_one(self, golden):
        """Li_3(-1) = -3/4 zeta(3)."""
        assert close_to(li(3, -1, prec=128).value, -3 * zeta_int(3) / 4, 124)

    def test_complex_outside_disk(self):
        """Complex z with |z| > 1 is not continued."""
        with pytest.raises(DomainError, match="not continued"):
            li(2, mpc(2, 2))

    def test_invalid_side(self):
        """Side must be upper or lower."""
        with pytest.raises(ValueError, match="Invalid side"):
            li(2, 3, side='middle')

    def test_derivative(self, hp):
        """z d/dz Li_k(z) = Li_(k-1)(z) by central differences."""
        h = mp.ldexp(1, -128 // 3)
        for k in (1, 2, 3):
            for z in (Fraction(1, 10), Fraction(3, 10), Fraction(1, 2), Fraction(-2, 5), Fraction(-7, 10)):
                x = to_mp(z)
                slope = (li(k, x + h, prec=128).value - li(k, x - h, prec=128).value) / (2 * h)
                assert close_to(x * slope, li(k - 1, x, prec=128).value, 70), (k, z)


class TestImaginaryAxis:
    """Re Li_k(iy) = 2^-k Li_k(-y^2)."""

    def test_unit(self, golden):
        """Re Li_2(i) = -pi^2/48."""
        assert close_to(re_li_on_imaginary_axis(2, 1, prec=128), -golden['pi'] ** 2 / 48, 124)

    def test_order_one(self, hp):
        """Re Li_1(iy) = -1/2 log(1 + y^2)."""
        y = Fraction(1, 7)
        assert close_to(re_li_on_imaginary_axis(1, y, prec=128), -mp.log(1 + mpf(1) / 49) / 2, 124)

    def test_alpha(self, golden):
        """Re Li_3(i alpha) = Li_3(-alpha^2) / 8."""
        alpha = golden['alpha']
        expected = li_inversion(3, -alpha ** 2, prec=128).value / 8
        assert close_to(re_li_on_imaginary_axis(3, alpha, prec=128), expected, 120)


class TestSpecialValues:
    """Golden-ratio special values of Li_2 and Li_3."""

    def test_catalog(self):
        """Every entry has terms and a statement."""
        assert len(SPECIAL_VALUES) >= 10
        for entry in SPECIAL_VALUES.values():
            assert entry.terms and '=' in entry.statement

    @pytest.mark.parametrize('name', sorted(SPECIAL_VALUES))
    def test_polylog_matches_closed_form(self, name):
        """The polylog combination equals its closed form to 50+ digits."""
        with mp.workprec(256):
            value = special_value_polylog(name, prec=192).value
            expected = special_value(name, prec=192)
            assert close_to(value, expected, 168)

    def test_named_values(self, golden):
        """Li2(-beta), the sum and the difference at -alpha, -beta."""
        pi, la = golden['pi'], golden['la']
        assert close_to(special_value('li2_minus_beta', prec=192), pi ** 2 / 10 - la ** 2, 188)
        assert close_to(special_value('li2_sum_minus_alpha_minus_beta', prec=192), -2 * la ** 2, 188)
        assert close_to(special_value('li2_diff_minus_alpha_minus_beta', prec=192), -pi ** 2 / 5, 188)

    def test_unknown(self):
        """Unknown names raise UnknownIdentityError, which is also a KeyError."""
        with pytest.raises(UnknownIdentityError, match="Unknown special value"):
            get_special('li2_nothing')
        with pytest.raises(KeyError):
            special_value('li2_nothing')

    @pytest.mark.parametrize('name,path', [
        ('li2_minus_beta', Path.DIRECT_SERIES),
        ('li2_beta_sq', Path.LOG_EXPANSION),
        ('li2_minus_alpha', Path.INVERSION),
        ('li2_minus_alpha', Path.LOG_EXPANSION),
    ])
    def test_forced_paths(self, name, path):
        """Forcing one path per term reproduces the closed form."""
        with mp.workprec(256):
            result = special_value_polylog(name, path=path, prec=192)
            assert result.path == path
            assert close_to(result.value, special_value(name, prec=192), 168)

    def test_bad_forced_path(self):
        """Only direct_series, log_expansion and inversion can be forced."""
        with pytest.raises(ValueError, match="Cannot force path"):
            li_sum([(Fraction(1), 2, '-beta')], path='zeta')

    def test_mixed_paths(self):
        """Terms routed differently report 'mixed'."""
        result = li_sum([(Fraction(1), 2, '-alpha'), (Fraction(1), 2, '-beta')], prec=128)
        assert result.path == 'mixed'

    def test_golden_argument(self, golden):
        """Tokens for golden-ratio arguments and plain rationals."""
        with mp.workprec(160):
            assert close_to(golden_argument('beta^2'), golden['beta'] ** 2, 150)
            assert close_to(golden_argument('-alpha/2'), -golden['alpha'] / 2, 150)
            assert close_to(golden_argument('alpha^-3'), golden['alpha'] ** -3, 150)
        assert golden_argument('1/3') == Fraction(1, 3)


class TestPolylogQuery:
    """The CLI request object."""

    def test_pole_rejected(self):
        """Li_1(1) and Li_0(1) are poles."""
        with pytest.raises(PoleError):
            PolylogQuery(1, 1, 128)
        with pytest.raises(PoleError):
            PolylogQuery(0, Fraction(1), 128)

    def test_to_dict(self):
        """to_dict carries value parts, the path and the tail bound."""
        query = PolylogQuery(2, Fraction(-1), 128)
        result = query.evaluate()
        data = query.to_dict(result)
        assert data['k'] == 2
        assert data['path'] == Path.ZETA
        assert data['value_re'].startswith('-0.822467033424113218')
        assert float(data['value_im']) == 0


# functional equations hold to 2^-(prec - 20) at prec = 128
RESIDUAL_LIMIT = mp.ldexp(1, -(128 - 20))


class TestFunctionalEquations:
    """Dilogarithm and trilogarithm functional equations."""

    @pytest.mark.parametrize('name,args', [
        ('landen', (Fraction(1, 2),)),
        ('landen', (Fraction(-3),)),
        ('reciprocal_shift', (Fraction(5, 2),)),
        ('duplication', (Fraction(-2, 3),)),
        ('inversion', (Fraction(7),)),
        ('reflection', (Fraction(1, 3),)),
        ('product', (Fraction(1, 2), Fraction(-2))),
        ('ratio', (Fraction(1, 4), Fraction(1, 3))),
    ])
    def test_dilog_cases(self, name, args):
        """Named dilogarithm equations at fixed points."""
        assert dilog_functional_equation(name, *args, prec=128) < RESIDUAL_LIMIT

    @pytest.mark.parametrize('name,args', [
        ('duplication', (Fraction(3, 5),)),
        ('inversion', (Fraction(5, 2),)),
    ])
    def test_trilog_cases(self, name, args):
        """Named trilogarithm equations at fixed points."""
        assert trilog_functional_equation(name, *args, prec=128) < RESIDUAL_LIMIT

    def test_reflection_at_half(self, golden):
        """Both sides of the reflection at 1/2 equal pi^2/6 - log^2 2."""
        lhs, rhs = DILOG_EQUATIONS['reflection'].sides(Fraction(1, 2))
        expected = golden['pi'] ** 2 / 6 - mp.log(2) ** 2
        assert close_to(lhs, expected, 120)
        assert close_to(rhs, expected, 120)

    def test_outside_domain(self):
        """Arguments outside the domain raise DomainError."""
        with pytest.raises(DomainError, match="outside the domain"):
            dilog_functional_equation('reflection', Fraction(2))
        with pytest.raises(DomainError, match="outside the domain"):
            dilog_functional_equation('ratio', Fraction(1, 2), Fraction(2, 3))

    def test_wrong_arity(self):
        """product takes two arguments."""
        with pytest.raises(DomainError, match="2 argument"):
            dilog_functional_equation('product', Fraction(1, 2))

    def test_unknown_equation(self):
        """Unknown names raise UnknownIdentityError."""
        with pytest.raises(UnknownIdentityError, match="Unknown dilogarithm"):
            dilog_functional_equation('pentagon', Fraction(1, 2))
        with pytest.raises(UnknownIdentityError, match="Unknown trilogarithm"):
            trilog_functional_equation('landen', Fraction(1, 2))

    def test_domains_cover_catalog(self):
        """Every equation has a sampler."""
        assert set(FUNCTIONAL_DOMAINS) == ({(2, n) for n in DILOG_EQUATIONS} | {(3, n) for n in TRILOG_EQUATIONS})

    @pytest.mark.parametrize('order,name', sorted(FUNCTIONAL_DOMAINS))
    def test_random_points(self, order, name):
        """Residual stays below 2^-108 at seeded random in-domain points."""
        self._check_random(order, name, 25, seed=7)

    @pytest.mark.slow
    @pytest.mark.parametrize('order,name', sorted(FUNCTIONAL_DOMAINS))
    def test_random_points_extended(self, order, name):
        """100 further points per equation."""
        self._check_random(order, name, 100, seed=8)

    @staticmethod
    def _check_random(order, name, count, seed):
        rng = random.Random(seed)
        sampler = FUNCTIONAL_DOMAINS[(order, name)]
        evaluate = dilog_functional_equation if order == 2 else trilog_functional_equation
        for _ in range(count):
            args = sampler(rng)
            assert evaluate(name, *args, prec=128) < RESIDUAL_LIMIT, (name, args)
