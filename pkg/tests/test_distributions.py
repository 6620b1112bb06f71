import math

import numpy as np
import pytest
import scipy.integrate
from hypothesis import given, settings
from hypothesis import strategies as st

from wqaoa.distributions import (
    MomentSummary,
    cauchy,
    distribution_from_config,
    empirical_moments,
    empirical_scale,
    exponential,
    normal,
    point_mass,
    uniform_plus,
    uniform_sym,
)
from wqaoa.errors import DegenerateScaleError, MomentError

ALL_DISTS = [uniform_plus(), uniform_sym(), exponential(1.0), exponential(0.2),
             normal(1.0, 0.5), normal(0.0, 1.0), point_mass(1.0), point_mass(-2.5),
             cauchy()]
MOMENT_DISTS = [d for d in ALL_DISTS if d.has_moments]


def quad_cos(dist, gamma: float) -> float:
    """Adaptive-quadrature oracle for E[cos(w*gamma)]."""
    if dist.kind == "uniform-plus":
        return scipy.integrate.quad(lambda w: math.cos(w * gamma), 0, 1, epsabs=1e-13)[0]
    if dist.kind == "uniform-sym":
        return scipy.integrate.quad(lambda w: 0.5 * math.cos(w * gamma), -1, 1, epsabs=1e-13)[0]
    if dist.kind == "exponential":
        lam = dist.a
        return scipy.integrate.quad(lambda w: lam * math.exp(-lam * w) * math.cos(w * gamma),
                                    0, np.inf, epsabs=1e-13, limit=400)[0]
    if dist.kind == "normal":
        mu, sig = dist.a, dist.b
        pdf = lambda w: math.exp(-0.5 * ((w - mu) / sig) ** 2) / (sig * math.sqrt(2 * math.pi))
        return scipy.integrate.quad(lambda w: pdf(w) * math.cos(w * gamma),
                                    mu - 14 * sig, mu + 14 * sig, epsabs=1e-13, limit=400)[0]
    if dist.kind == "point-mass":
        return math.cos(dist.a * gamma)
    if dist.kind == "cauchy":
        # symmetric density: Fourier cosine transform on the half line
        val, _ = scipy.integrate.quad(lambda w: 2.0 / (math.pi * (1 + w * w)),
                                      0, np.inf, weight="cos", wvar=gamma,
                                      epsabs=1e-12, limit=400)
        return val
    raise AssertionError(dist.kind)


def quad_w_sin(dist, gamma: float) -> float:
    """Adaptive-quadrature oracle for E[w*sin(w*gamma)]."""
    if dist.kind == "uniform-plus":
        return scipy.integrate.quad(lambda w: w * math.sin(w * gamma), 0, 1, epsabs=1e-13)[0]
    if dist.kind == "uniform-sym":
        return scipy.integrate.quad(lambda w: 0.5 * w * math.sin(w * gamma), -1, 1, epsabs=1e-13)[0]
    if dist.kind == "exponential":
        lam = dist.a
        return scipy.integrate.quad(lambda w: lam * w * math.exp(-lam * w) * math.sin(w * gamma),
                                    0, np.inf, epsabs=1e-13, limit=400)[0]
    if dist.kind == "normal":
        mu, sig = dist.a, dist.b
        pdf = lambda w: math.exp(-0.5 * ((w - mu) / sig) ** 2) / (sig * math.sqrt(2 * math.pi))
        return scipy.integrate.quad(lambda w: pdf(w) * w * math.sin(w * gamma),
                                    mu - 14 * sig, mu + 14 * sig, epsabs=1e-13, limit=400)[0]
    if dist.kind == "point-mass":
        return dist.a * math.sin(dist.a * gamma)
    raise AssertionError(dist.kind)


GAMMA_GRID = [-10.0, -5.5, -2.0, -1.0, -0.3, -1e-5, 0.0, 1e-5, 0.25, 0.7, 1.0, 3.3, 10.0]


class TestTrigExpectations:
    @pytest.mark.parametrize("dist", ALL_DISTS, ids=lambda d: d.label())
    def test_cos_matches_quadrature(self, dist):
        if dist.kind == "cauchy" and dist.a != 0:
            pytest.skip("oracle covers the symmetric case")
        for g in GAMMA_GRID:
            assert dist.cos_expectation(g) == pytest.approx(quad_cos(dist, g), abs=1e-9)

    @pytest.mark.parametrize("dist", MOMENT_DISTS, ids=lambda d: d.label())
    def test_w_sin_matches_quadrature(self, dist):
        for g in GAMMA_GRID:
            assert dist.w_sin_expectation(g) == pytest.approx(quad_w_sin(dist, g), abs=1e-9)

    @pytest.mark.parametrize("dist", ALL_DISTS, ids=lambda d: d.label())
    def test_gamma_zero(self, dist):
        assert dist.cos_expectation(0.0) == pytest.approx(1.0, abs=1e-15)
        if dist.has_moments:
            assert dist.w_sin_expectation(0.0) == pytest.approx(0.0, abs=1e-15)

    def test_exponential_reference_point(self):
        # E[cos] = lam^2/(lam^2+g^2) and E[w sin] = 2 g lam^2/(lam^2+g^2)^2
        d = exponential(1.0)
        assert d.cos_expectation(1.0) == pytest.approx(0.5, abs=1e-15)
        assert d.w_sin_expectation(1.0) == pytest.approx(0.5, abs=1e-15)

    def test_normal_reference_point(self):
        assert normal(0.0, 1.0).cos_expectation(2.0) == pytest.approx(math.exp(-2.0), rel=1e-12)

    @pytest.mark.parametrize("dist", MOMENT_DISTS, ids=lambda d: d.label())
    def test_derivative_consistency(self, dist):
        # d/dg E[cos(wg)] = -E[w sin(wg)], central difference h = 1e-5
        h = 1e-5
        for g in [-4.0, -0.9, 0.0, 0.4, 2.2, 7.0]:
            fd = (dist.cos_expectation(g + h) - dist.cos_expectation(g - h)) / (2 * h)
            assert fd == pytest.approx(-dist.w_sin_expectation(g), abs=1e-6)

    @given(g=st.floats(-50, 50))
    @settings(max_examples=200, deadline=None)
    def test_cos_bounded(self, g):
        for dist in ALL_DISTS:
            assert abs(dist.cos_expectation(g)) <= 1.0 + 1e-12

    def test_vectorized(self):
        d = exponential(0.7)
        grid = np.linspace(-3, 3, 11)
        assert np.allclose(d.cos_expectation(grid), [d.cos_expectation(g) for g in grid])
        assert np.allclose(d.w_sin_expectation(grid), [d.w_sin_expectation(g) for g in grid])

    def test_cauchy_w_sin_rejected(self):
        with pytest.raises(MomentError):
            cauchy().w_sin_expectation(1.0)


class TestMoments:
    @pytest.mark.parametrize("dist,mean,m2", [
        (uniform_plus(), 0.5, 1 / 3),
        (uniform_sym(), 0.0, 1 / 3),
        (exponential(0.2), 5.0, 50.0),
        (normal(1.0, 0.5), 1.0, 1.25),
        (point_mass(-2.0), -2.0, 4.0),
    ])
    def test_analytic_moments(self, dist, mean, m2):
        assert dist.mean() == pytest.approx(mean, rel=1e-15)
        assert dist.second_moment() == pytest.approx(m2, rel=1e-15)
        summary = dist.moment_summary()
        assert summary.source == "analytic"
        assert summary.second_moment >= summary.mean**2 - 1e-12

    def test_cauchy_moments_unavailable(self):
        assert not cauchy().has_moments
        with pytest.raises(MomentError):
            cauchy().mean()
        with pytest.raises(MomentError):
            cauchy().second_moment()

    def test_moment_summary_invariant(self):
        with pytest.raises(ValueError):
            MomentSummary(mean=2.0, second_moment=1.0, source="analytic")


class TestSampling:
    def test_point_mass_constant(self, rng):
        assert np.all(point_mass(1.0).sample(rng, 100) == 1.0)

    def test_exponential_mean(self, rng):
        xs = exponential(0.2).sample(rng, 1_000_000)
        assert abs(xs.mean() - 5.0) < 0.02

    def test_uniform_sym_second_moment(self, rng):
        xs = uniform_sym().sample(rng, 1_000_000)
        assert abs(np.mean(xs**2) - 1 / 3) < 0.01

    def test_reproducible(self):
        a = exponential(1.0).sample(np.random.default_rng(5), 10)
        b = exponential(1.0).sample(np.random.default_rng(5), 10)
        assert np.array_equal(a, b)


class TestEmpiricalScale:
    def test_examples(self):
        assert empirical_scale([1, 1, 1, 1]) == 1.0
        assert empirical_scale([2]) == 2.0
        assert empirical_scale([3, 4]) == pytest.approx(math.sqrt(12.5), rel=1e-15)

    def test_zero_weights(self):
        with pytest.raises(DegenerateScaleError):
            empirical_scale([0.0, 0.0])

    @pytest.mark.parametrize("dist", [exponential(1.0), uniform_plus(), normal(1.0, 0.5)],
                             ids=lambda d: d.label())
    def test_convergence_to_rms(self, dist, rng):
        # sqrt(mean w^2) over 1e6 draws within a +-4 sigma band of sqrt(E[w^2])
        n = 1_000_000
        xs = dist.sample(rng, n)
        target = math.sqrt(dist.second_moment())
        # delta method: std of the scale estimate from the variance of w^2
        var_w2 = np.var(xs**2)
        band = 4 * math.sqrt(var_w2 / n) / (2 * target)
        assert abs(empirical_scale(xs) - target) < band

    def test_empirical_moments(self):
        summary = empirical_moments([1.0, 3.0])
        assert summary.mean == 2.0
        assert summary.second_moment == 5.0
        assert summary.source == "empirical"


class TestConfig:
    @pytest.mark.parametrize("dist", ALL_DISTS, ids=lambda d: d.label())
    def test_roundtrip(self, dist):
        assert distribution_from_config(dist.to_config()) == dist

    def test_exponential_lambda_key(self):
        d = distribution_from_config({"kind": "exponential", "lambda": 0.2})
        assert d.a == 0.2
