import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose
from scipy import stats
from scipy.integrate import dblquad

from cehr import DomainError, FrankCopula, debye, spearman_rho, theta_from_rho

UNIT_GRID = np.round(np.arange(0.0, 1.0001, 0.01), 2)
COARSE_GRID = np.round(np.arange(0.05, 0.9501, 0.05), 2)
THETAS = [0.5, 1.0, 3.0, 5.0, 12.0, 40.0, 80.0]

# dblquad of the copula density over [0, 0.5]^2 at theta = 5, frozen.
FRANK_C_HALF_HALF_T5 = 0.3771485107

# High-precision quadrature values for the Debye integrals at x = 1, frozen.
DEBYE_1_AT_1 = 0.7775046341122482
DEBYE_2_AT_1 = 0.7078784756278294


class TestCdf:
    def test_independence_is_product(self):
        c = FrankCopula.independence()
        assert c.cdf(0.3, 0.7) == pytest.approx(0.21, abs=1e-15)

    @pytest.mark.parametrize("theta", THETAS)
    def test_boundary_identities(self, theta):
        c = FrankCopula(theta)
        u = UNIT_GRID
        assert np.max(np.abs(c.cdf(u, np.ones_like(u)) - u)) < 1e-12
        assert np.max(np.abs(c.cdf(np.ones_like(u), u) - u)) < 1e-12
        assert np.max(np.abs(c.cdf(u, np.zeros_like(u)))) < 1e-12
        assert np.max(np.abs(c.cdf(np.zeros_like(u), u))) < 1e-12

    def test_against_density_quadrature(self):
        theta = 5.0

        def density(u, v):
            em = np.exp(-theta) - 1.0
            eu = np.exp(-theta * u) - 1.0
            ev = np.exp(-theta * v) - 1.0
            return -theta * em * np.exp(-theta * (u + v)) / (em + eu * ev) ** 2

        oracle, err = dblquad(density, 0.0, 0.5, 0.0, 0.5, epsabs=1e-12, epsrel=1e-12)
        assert err < 1e-10
        assert oracle == pytest.approx(FRANK_C_HALF_HALF_T5, abs=1e-9)
        assert FrankCopula(theta).cdf(0.5, 0.5) == pytest.approx(oracle, abs=1e-10)

    @pytest.mark.parametrize("theta", THETAS)
    def test_frechet_bounds(self, theta):
        c = FrankCopula(theta)
        uu, vv = np.meshgrid(UNIT_GRID, UNIT_GRID)
        val = c.cdf(uu, vv)
        assert np.all(val <= np.minimum(uu, vv) + 1e-12)
        assert np.all(val >= np.maximum(uu + vv - 1.0, 0.0) - 1e-12)

    @settings(max_examples=200, deadline=None)
    @given(
        theta=st.floats(0.01, 60.0),
        u1=st.floats(0.0, 1.0),
        u2=st.floats(0.0, 1.0),
        v1=st.floats(0.0, 1.0),
        v2=st.floats(0.0, 1.0),
    )
    def test_rectangle_inequality(self, theta, u1, u2, v1, v2):
        ua, ub = sorted((u1, u2))
        va, vb = sorted((v1, v2))
        c = FrankCopula(theta)
        mass = c.cdf(ub, vb) - c.cdf(ua, vb) - c.cdf(ub, va) + c.cdf(ua, va)
        assert mass >= -1e-12

    def test_rejects_out_of_range(self):
        c = FrankCopula(2.0)
        with pytest.raises(DomainError):
            c.cdf(-0.1, 0.5)
        with pytest.raises(DomainError):
            c.cdf(0.5, 1.1)


class TestPartials:
    def test_upper_boundary_is_one(self):
        for theta in THETAS:
            c = FrankCopula(theta)
            ones = np.ones_like(UNIT_GRID)
            assert np.max(np.abs(c.partial_u(UNIT_GRID, ones) - 1.0)) < 1e-12

    def test_independence(self):
        c = FrankCopula.independence()
        assert c.partial_u(0.8, 0.4) == pytest.approx(0.4, abs=1e-15)
        assert c.partial_v(0.8, 0.4) == pytest.approx(0.8, abs=1e-15)

    @pytest.mark.parametrize("theta", [1.0, 3.0, 5.74, 20.0])
    def test_finite_difference_agreement(self, theta):
        c = FrankCopula(theta)
        h = 1e-6
        uu, vv = np.meshgrid(COARSE_GRID, COARSE_GRID)
        analytic = c.partial_u(uu, vv)
        numeric = (c.cdf(uu + h, vv) - c.cdf(uu - h, vv)) / (2.0 * h)
        assert np.max(np.abs(analytic - numeric)) < 1e-6

    def test_specific_point_against_difference(self):
        c = FrankCopula(3.0)
        h = 1e-6
        numeric = (c.cdf(0.6 + h, 0.7) - c.cdf(0.6 - h, 0.7)) / (2.0 * h)
        assert abs(c.partial_u(0.6, 0.7) - numeric) < 1e-6

    @pytest.mark.parametrize("theta", THETAS)
    def test_within_unit_interval(self, theta):
        c = FrankCopula(theta)
        uu, vv = np.meshgrid(UNIT_GRID, UNIT_GRID)
        val = c.partial_u(uu, vv)
        assert np.all(val >= -1e-15)
        assert np.all(val <= 1.0 + 1e-12)

    def test_symmetry(self):
        c = FrankCopula(4.2)
        assert c.partial_v(0.3, 0.8) == pytest.approx(c.partial_u(0.8, 0.3), abs=1e-15)


class TestDebye:
    def test_limit_at_zero(self):
        assert debye(1, 1e-8) == pytest.approx(1.0, abs=1e-6)

    def test_frozen_values(self):
        assert debye(1, 1.0) == pytest.approx(DEBYE_1_AT_1, abs=1e-10)
        assert debye(2, 1.0) == pytest.approx(DEBYE_2_AT_1, abs=1e-10)

    def test_against_mpmath_oracle(self):
        mpmath = pytest.importorskip("mpmath")
        mpmath.mp.dps = 30
        for k in (1, 2):
            for x in (0.5, 1.0, 5.0, 20.0):
                oracle = float(
                    k / mpmath.mpf(x) ** k * mpmath.quad(lambda t: t**k / mpmath.expm1(t), [0, x])
                )
                assert debye(k, x) == pytest.approx(oracle, rel=1e-9)

    @pytest.mark.parametrize("x", [0.5, 1.0, 5.0, 10.0])
    def test_order_two_below_order_one(self, x):
        assert debye(2, x) <= debye(1, x)

    def test_rejects_bad_arguments(self):
        with pytest.raises(DomainError):
            debye(3, 1.0)
        with pytest.raises(DomainError):
            debye(1, 0.0)
        with pytest.raises(DomainError):
            debye(1, -2.0)


class TestSpearman:
    def test_independence_is_zero(self):
        assert FrankCopula.independence().spearman() == 0.0

    def test_strictly_increasing_in_theta(self):
        values = [spearman_rho(t) for t in (1.0, 3.0, 6.0)]
        assert values[0] < values[1] < values[2]

    def test_monte_carlo_oracle_theta3(self):
        rng = np.random.default_rng(20260810)
        c = FrankCopula(3.0)
        u, v = c.sample(10**6, rng)
        empirical = stats.spearmanr(u, v).statistic
        assert abs(empirical - spearman_rho(3.0)) < 0.005


class TestThetaFromRho:
    def test_small_rho_gives_small_theta(self):
        assert theta_from_rho(1e-4) < 0.01

    def test_monotone(self):
        assert theta_from_rho(0.1) < theta_from_rho(0.3) < theta_from_rho(0.5)

    @pytest.mark.parametrize("rho", [0.05, 0.1, 0.3, 0.5, 0.9])
    def test_round_trip(self, rho):
        assert abs(spearman_rho(theta_from_rho(rho)) - rho) < 1e-8

    def test_monte_carlo_oracle_rho_half(self):
        rng = np.random.default_rng(7)
        c = FrankCopula.from_rho(0.5)
        u, v = c.sample(10**6, rng)
        assert abs(stats.spearmanr(u, v).statistic - 0.5) < 0.005

    @pytest.mark.parametrize("rho", [0.0, -0.3, 0.96, 1.0])
    def test_rejects_out_of_range(self, rho):
        with pytest.raises(DomainError):
            theta_from_rho(rho)


class TestSampling:
    def test_independence_passes_through(self):
        c = FrankCopula.independence()
        u, v = c.sample_pair(0.37, 0.82)
        assert v == pytest.approx(0.82, abs=1e-15)

    def test_conditional_quantile_inverts_partial(self):
        c = FrankCopula(6.0)
        u = np.linspace(0.05, 0.95, 10)
        w = np.linspace(0.1, 0.9, 10)
        v = c.conditional_quantile(u, w)
        assert_allclose(c.partial_u(u, v), w, atol=1e-10)

    def test_marginal_uniformity(self):
        rng = np.random.default_rng(123)
        c = FrankCopula.from_rho(0.3)
        _, v = c.sample(10**5, rng)
        assert stats.kstest(v, "uniform").statistic < 0.01

    def test_empirical_spearman_at_calibrated_theta(self):
        rng = np.random.default_rng(20260810)
        c = FrankCopula.from_rho(0.3)
        u, v = c.sample(10**6, rng)
        assert abs(stats.spearmanr(u, v).statistic - 0.3) < 0.005


def test_constructor_validation():
    with pytest.raises(DomainError):
        FrankCopula(0.0)
    with pytest.raises(DomainError):
        FrankCopula(-2.0)
    with pytest.raises(DomainError):
        FrankCopula(float("inf"))
    with pytest.raises(DomainError):
        FrankCopula(theta=1.0, independent=True)
