"""Quadrature oracles: Lp norms, Hoelder bounds, fractional seminorms."""

import math
from fractions import Fraction

import numpy as np
import pytest

from rkhs_sandwich import (DivergenceError, NormFunctional, QuadratureConfig,
                           ball, cube, hoelder_norm, lp_norm, radial_integral,
                           slobodeckij_norm, slobodeckij_seminorm,
                           unit_ball_volume)
from rkhs_sandwich.bumps import SmoothBumpMember, TentMember, smooth_family
from rkhs_sandwich.norms import AccuracyError, default_point_cloud

TIGHT = QuadratureConfig(tolerance=1e-6)


class TestConfig:
    def test_resolution_floor(self):
        with pytest.raises(ValueError):
            QuadratureConfig(resolution=8)

    def test_tolerance_range(self):
        with pytest.raises(ValueError):
            QuadratureConfig(tolerance=1e-2)
        QuadratureConfig(tolerance=1e-3)


class TestLpNorm:
    def test_single_member_identity_scale(self):
        dom = ball(1)
        base = SmoothBumpMember(1, np.zeros(1), 1.0)
        member = SmoothBumpMember(1, np.zeros(1), 1.0)
        assert lp_norm(member, 2, dom, TIGHT) == \
            pytest.approx(lp_norm(base, 2, dom, TIGHT))

    def test_four_bump_l2_identity(self):
        # n^(1/p) delta^(d/p) = 4^(1/2) (1/4)^(1/2) = 1: the sum has the same
        # L2 norm as the reference bump
        dom = ball(1, 2)
        centers = np.array([[-1.125], [-0.375], [0.375], [1.125]])
        fam = smooth_family(1, Fraction(1, 4), domain=dom, centers=centers)
        h = fam.all_plus()
        base = SmoothBumpMember(1, np.zeros(1), 1.0)
        assert lp_norm(h, 2, dom, TIGHT) == \
            pytest.approx(lp_norm(base, 2, dom, TIGHT), rel=1e-4)

    def test_four_bump_derivative_l1(self):
        # n^(1/p) delta^(d/p - 1) = 4 * (1/4)^0 = 4 on the derivative side
        dom = ball(1, 2)
        centers = np.array([[-1.125], [-0.375], [0.375], [1.125]])
        fam = smooth_family(1, Fraction(1, 4), domain=dom, centers=centers)
        h = fam.all_plus().derivative((1,))
        base = SmoothBumpMember(1, np.zeros(1), 1.0).derivative((1,))
        assert lp_norm(h, 1, dom, TIGHT) == \
            pytest.approx(4.0 * lp_norm(base, 1, dom, TIGHT), rel=1e-4)

    def test_indicator_constant(self):
        from rkhs_sandwich.bumps import IndicatorMember
        m = IndicatorMember(np.zeros(2), np.full(2, 0.5))
        assert lp_norm(m, 3, cube(2)) == pytest.approx(0.25 ** (1 / 3), rel=1e-9)


class TestHoelderNorm:
    def test_constant_function(self):
        pts = np.linspace(0, 1, 20).reshape(-1, 1)
        assert hoelder_norm(lambda X: np.ones(len(X)), 0.5, pts) == 1.0

    def test_linear_function_lipschitz(self):
        pts = np.linspace(0, 1, 50).reshape(-1, 1)
        val = hoelder_norm(lambda X: X[:, 0], 1.0, pts)
        assert val == pytest.approx(1.0, rel=1e-12)

    def test_tent_beta_lower_bound_with_witness(self):
        # quotient from the peak to the support edge is delta^((a-b)/a)
        delta, a, b = 0.2, 0.5, 0.25
        t = TentMember(np.array([0.5]), delta, a)
        edge = 0.5 + delta ** (1 / a)
        pts = np.array([[0.5], [edge], [0.9]])
        val = hoelder_norm(t, b, pts)
        assert val >= delta ** ((a - b) / a) - 1e-12

    def test_exponent_range(self):
        from rkhs_sandwich.norms import NormError
        with pytest.raises(NormError):
            hoelder_norm(lambda X: X[:, 0], 1.5, np.zeros((3, 1)))

    def test_default_cloud_contains_support_centers(self):
        m = SmoothBumpMember(1, np.array([0.3]), 0.1)
        cloud = default_point_cloud(m, cube(1))
        assert np.any(np.isclose(cloud[:, 0], 0.3))


def _linear_seminorm(theta: float, p: float) -> float:
    # analytic value for g(x) = x on (0,1): the double integral reduces to
    # the moment of |x - y|^((1-theta)p - 1)
    a = (1.0 - theta) * p
    return (2.0 / (a * (a + 1.0))) ** (1.0 / p)


class TestSlobodeckijSeminorm:
    def test_constant_is_exactly_zero(self):
        val = slobodeckij_seminorm(lambda X: np.full(len(X), 3.0), 0.5, 2,
                                   cube(1))
        assert val == 0.0

    def test_linear_unit_value(self):
        val = slobodeckij_seminorm(lambda X: X[:, 0], 0.5, 2, cube(1))
        assert val == pytest.approx(1.0, rel=1e-3)

    @pytest.mark.parametrize("theta,p", [(0.25, 1.0), (0.75, 3.0), (0.7, 1.0)])
    def test_linear_analytic_values(self, theta, p):
        val = slobodeckij_seminorm(lambda X: X[:, 0], theta, p, cube(1),
                                   config=QuadratureConfig(tolerance=1e-3))
        assert val == pytest.approx(_linear_seminorm(theta, p), rel=5e-3)

    def test_two_dimensional_linear_is_finite_and_stable(self):
        g = lambda X: X[:, 0]
        loose = QuadratureConfig(tolerance=1e-3)
        a = slobodeckij_seminorm(g, 0.5, 2, cube(2), config=loose)
        b = slobodeckij_seminorm(g, 0.5, 2, cube(2), config=loose,
                                 base_resolution=48)
        assert a > 0 and b == pytest.approx(a, rel=2e-2)

    def test_divergence_detected(self):
        # |x - 1/2|^0.3 has a cusp too rough for theta = 0.8 in L2
        g = lambda X: np.abs(X[:, 0] - 0.5) ** 0.3
        with pytest.raises((DivergenceError, AccuracyError)):
            slobodeckij_seminorm(g, 0.8, 2, cube(1))

    def test_theta_outside_unit_interval(self):
        with pytest.raises(DivergenceError):
            slobodeckij_seminorm(lambda X: X[:, 0], 1.2, 2, cube(1))

    def test_side_scaling_slope(self):
        # for locally linear g the seminorm over (0, L) scales like
        # L^(d/p + 1 - theta); here the exponent is 1
        g = lambda X: X[:, 0]
        sides = [0.25, 0.5, 1.0]
        vals = [slobodeckij_seminorm(g, 0.5, 2, cube(1),
                                     box=(np.zeros(1), np.full(1, L)))
                for L in sides]
        slope = np.polyfit(np.log(sides), np.log(vals), 1)[0]
        assert abs(slope - 1.0) < 0.1


class TestSlobodeckijNorm:
    def test_fractional_norm_takes_the_max(self):
        class Linear:
            def __call__(self, X):
                return X[:, 0]
        # ||x||_L2 = 1/sqrt(3) < seminorm = 1
        val = slobodeckij_norm(Linear(), 0.5, 2, cube(1))
        assert val == pytest.approx(1.0, rel=1e-3)


class TestRadialIntegral:
    def test_disk_area(self):
        assert radial_integral(lambda r: 1.0, 0, 1, 2) == pytest.approx(math.pi)

    def test_interval_length(self):
        assert radial_integral(lambda r: 1.0, 0, 1, 1) == pytest.approx(2.0)

    def test_lipschitz_tail_formula(self):
        # profile r^(p - theta p - d) integrates to
        # d V_d delta^((1-theta)p) / ((1-theta)p)
        theta, p, d, delta = 0.5, 2.0, 2, 1.0 / 3.0
        expo = p - theta * p - d
        val = radial_integral(lambda r: r ** expo, 0, delta, d)
        expected = d * unit_ball_volume(d) * \
            delta ** ((1 - theta) * p) / ((1 - theta) * p)
        assert val == pytest.approx(expected, rel=1e-9)

    def test_divergent_tail(self):
        with pytest.raises(DivergenceError):
            radial_integral(lambda r: r ** -3.0, 0, 1, 1)


class TestFunctionalDispatch:
    def test_sup_functional(self):
        m = SmoothBumpMember(1, np.zeros(1), 0.5)
        fn = NormFunctional("sup")
        assert fn(m, ball(1)) == pytest.approx(1.0)

    def test_lp_functional_matches_direct_call(self):
        m = SmoothBumpMember(1, np.zeros(1), 0.5)
        fn = NormFunctional("lp-of-derivative", alpha=(0,), p=2.0)
        assert fn(m, ball(1)) == pytest.approx(lp_norm(m, 2, ball(1)))
