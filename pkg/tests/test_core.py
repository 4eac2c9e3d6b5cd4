import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from sinkrand.core import (
    BOUND_LIMIT,
    SamplerStats,
    SinKDistribution,
    log_bound,
    log_density,
    log_envelope_density,
    log_gamma_ratio,
    log_normalizer,
    sample,
    sample_beta_symmetric,
)
from sinkrand.oracle import ks_statistic
from sinkrand.rng import RandomSource

PI = math.pi
mpmath.mp.dps = 40


def bound_direct(k):
    # M_k = sqrt(pi) 2^(k-1) Γ(k/2+1)^2 / Γ(k+3/2), straight log-gamma evaluation
    return math.exp(
        0.5 * math.log(PI)
        + (k - 1) * math.log(2.0)
        + 2.0 * math.lgamma(k / 2 + 1)
        - math.lgamma(k + 1.5)
    )


def open_grid(n):
    return np.linspace(0.0, PI, n + 2)[1:-1]


def dyadic_symmetric_grid(n):
    # multiples of 2**-40 so that pi - x is exact and pi - (pi - x) == x
    half = np.round(np.linspace(1e-3, PI / 2, n) * 2.0**40) / 2.0**40
    return np.concatenate([half, PI - half])


@settings(max_examples=100, deadline=None)
@given(
    z=st.floats(min_value=0.0, max_value=1e12),
    a=st.sampled_from([0.25, 0.5, 0.75, 1.0, 1.25]),
    b=st.sampled_from([0.25, 0.5, 0.75, 1.0, 1.25]),
)
def test_log_gamma_ratio(z, a, b):
    exact = mpmath.loggamma(mpmath.mpf(z) + a) - mpmath.loggamma(mpmath.mpf(z) + b)
    assert log_gamma_ratio(z, a, b) == pytest.approx(float(exact), abs=1e-13)


class TestConstruction:
    @pytest.mark.parametrize("k", [0.999, 0.5, 0.0, -3.0, float("nan"), float("inf")])
    def test_rejects_bad_k(self, k):
        with pytest.raises(ValueError):
            SinKDistribution(k)

    def test_accepts_real_k(self):
        assert SinKDistribution(2.5).k == 2.5
        assert isinstance(SinKDistribution(3).k, float)

    def test_stats_invariants(self):
        with pytest.raises(ValueError):
            SamplerStats(proposals=1, acceptances=2)
        with pytest.raises(ValueError):
            SamplerStats(proposals=-1)
        assert math.isnan(SamplerStats().acceptance_rate)
        assert SamplerStats(4, 3).acceptance_rate == 0.75


class TestNormalizer:
    def test_k1(self):
        assert log_normalizer(SinKDistribution(1)) == pytest.approx(math.log(0.5), abs=1e-15)

    def test_k2(self):
        assert log_normalizer(SinKDistribution(2)) == pytest.approx(math.log(2 / PI), abs=1e-15)

    def test_k4_against_quadrature(self):
        area, _ = integrate.quad(lambda t: math.sin(t) ** 4, 0.0, PI, epsabs=1e-14)
        assert area == pytest.approx(3 * PI / 8, rel=1e-12)
        assert log_normalizer(SinKDistribution(4)) == pytest.approx(math.log(8 / (3 * PI)), abs=1e-14)

    @pytest.mark.parametrize("k", [1.0, 2.5, 7.0, 39.0, 41.0, 100.0, 1e5, 1e9])
    def test_matches_high_precision(self, k):
        K = mpmath.mpf(k)
        exact = mpmath.loggamma(K / 2 + 1) - mpmath.log(mpmath.pi) / 2 - mpmath.loggamma(K / 2 + 0.5)
        assert log_normalizer(SinKDistribution(k)) == pytest.approx(float(exact), abs=1e-14)

    def test_finite_for_huge_k(self):
        assert math.isfinite(log_normalizer(SinKDistribution(1e300)))

    @pytest.mark.parametrize("k", [1, 2, 10, 100])
    def test_density_integrates_to_one(self, k):
        d = SinKDistribution(k)
        total, _ = integrate.quad(
            lambda t: math.exp(log_density(d, t)), 0.0, PI, points=[PI / 2],
            epsabs=1e-13, epsrel=1e-13, limit=200,
        )
        assert abs(total - 1.0) <= 1e-8


class TestDensity:
    @pytest.mark.parametrize("k", [1, 3.5, 40, 1e4])
    def test_mode_value(self, k):
        d = SinKDistribution(k)
        assert log_density(d, PI / 2) == log_normalizer(d)

    def test_k1_mode(self):
        assert log_density(SinKDistribution(1), PI / 2) == pytest.approx(math.log(0.5), abs=1e-15)

    def test_k2_quarter(self):
        assert log_density(SinKDistribution(2), PI / 4) == pytest.approx(-math.log(PI), abs=1e-15)

    @pytest.mark.parametrize("x", [0.0, PI, -1.0, 4.0, float("nan")])
    def test_domain(self, x):
        with pytest.raises(ValueError):
            log_density(SinKDistribution(2), x)
        with pytest.raises(ValueError):
            log_envelope_density(SinKDistribution(2), x)

    @pytest.mark.parametrize("k", [1, 2, 5, 50, 1000])
    def test_exact_symmetry(self, k):
        d = SinKDistribution(k)
        x = dyadic_symmetric_grid(500)
        half = x.size // 2
        a = log_density(d, x)
        assert np.array_equal(a[:half], a[half:])
        e = log_envelope_density(d, x)
        assert np.array_equal(e[:half], e[half:])

    def test_tends_to_minus_infinity(self):
        d = SinKDistribution(3)
        assert log_density(d, 1e-200) < -1000
        assert log_envelope_density(SinKDistribution(1), 1e-300) < -600


class TestEnvelope:
    def test_k1_mode(self):
        d = SinKDistribution(1)
        assert log_envelope_density(d, PI / 2) == pytest.approx(math.log(3 / (2 * PI)), abs=1e-14)
        ratio = math.exp(log_density(d, PI / 2) - log_envelope_density(d, PI / 2))
        assert ratio == pytest.approx(PI / 3, rel=1e-13)

    @pytest.mark.parametrize("k", [1, 4.5, 30])
    def test_matches_scipy_beta(self, k):
        d = SinKDistribution(k)
        x = open_grid(50)
        expected = stats.beta(k + 1, k + 1).logpdf(x / PI) - math.log(PI)
        assert np.allclose(log_envelope_density(d, x), expected, atol=1e-10)


class TestBound:
    @pytest.mark.parametrize(
        "k,value", [(1, PI / 3), (2, 16 / 15), (3, 12 * PI / 35), (4, 1024 / 945)]
    )
    def test_closed_forms(self, k, value):
        assert math.exp(log_bound(SinKDistribution(k))) == pytest.approx(value, rel=1e-12)

    @pytest.mark.parametrize("k", [1, 1.5, 5, 37, 400, 5000])
    def test_matches_direct_formula(self, k):
        assert math.exp(log_bound(SinKDistribution(k))) == pytest.approx(bound_direct(k), rel=1e-11)

    def test_is_ratio_at_mode(self):
        for k in [1, 6, 250]:
            d = SinKDistribution(k)
            at_mode = log_density(d, PI / 2) - log_envelope_density(d, PI / 2)
            assert at_mode == pytest.approx(log_bound(d), abs=1e-9)

    @pytest.mark.parametrize("k", [1, 2.5, 39, 40, 41, 1e4, 1e6, 1e10])
    def test_matches_high_precision(self, k):
        K = mpmath.mpf(k)
        exact = (
            mpmath.log(mpmath.sqrt(mpmath.pi)) + (K - 1) * mpmath.log(2)
            + 2 * mpmath.loggamma(K / 2 + 1) - mpmath.loggamma(K + 1.5)
        )
        assert log_bound(SinKDistribution(k)) == pytest.approx(float(exact), abs=1e-14)

    def test_huge_k_below_limit(self):
        assert log_bound(SinKDistribution(1e6)) <= math.log(BOUND_LIMIT)

    def test_strictly_increasing_and_bounded(self):
        m = np.array([log_bound(SinKDistribution(k)) for k in range(1, 10_001)])
        assert np.all(np.diff(m) > 0)
        assert np.all(np.exp(m) < BOUND_LIMIT + 1e-9)
        assert np.all(np.exp(m) >= 1.0)


class TestDomination:
    @pytest.mark.parametrize("k", [1, 2, 5, 50, 1000])
    def test_grid(self, k):
        d = SinKDistribution(k)
        x = open_grid(10_000)
        lhs = log_density(d, x)
        rhs = log_bound(d) + log_envelope_density(d, x)
        assert np.all(lhs <= rhs + 1e-10)
        gap = log_density(d, PI / 2) - (log_bound(d) + log_envelope_density(d, PI / 2))
        assert abs(gap) <= 1e-9

    def test_sine_below_quadratic(self):
        x = open_grid(10_000)
        quad_ = 4.0 / PI**2 * (PI - x) * x
        assert np.all(np.sin(x) <= quad_ + 1e-15)
        assert math.sin(PI / 2) == pytest.approx(4.0 / PI**2 * (PI / 2) ** 2, abs=1e-15)
        # both vanish at the ends
        for end in (1e-12, PI - 1e-12):
            assert abs(math.sin(end) - 4.0 / PI**2 * (PI - end) * end) < 1e-11

    @settings(max_examples=200, deadline=None)
    @given(
        k=st.floats(min_value=1.0, max_value=1e4),
        x=st.floats(min_value=1e-6, max_value=PI - 1e-6),
    )
    def test_property(self, k, x):
        d = SinKDistribution(k)
        assert log_density(d, x) <= log_bound(d) + log_envelope_density(d, x) + 1e-10


class TestBetaSampler:
    N = 100_000

    @pytest.mark.parametrize("k", [1, 3, 20, 500])
    def test_mean(self, k):
        v = sample_beta_symmetric(k, RandomSource(k), self.N)
        se = math.sqrt(1.0 / (4 * (2 * k + 3)) / self.N)
        assert abs(v.mean() - 0.5) <= 4 * se

    def test_variance_k1(self):
        v = sample_beta_symmetric(1, RandomSource(99), self.N)
        # Var of the sample variance for Beta(2,2): mu4 - sigma^4 with mu4 = 3/560
        se = math.sqrt((3 / 560 - (1 / 20) ** 2) / self.N)
        assert abs(v.var() - 1 / 20) <= 4 * se

    def test_ks_against_closed_form_cdf(self):
        v = sample_beta_symmetric(1, RandomSource(5), self.N)
        d = ks_statistic(v, lambda t: 3 * t**2 - 2 * t**3)
        assert d < 1.63 / math.sqrt(self.N)

    def test_range_and_scalar(self):
        v = sample_beta_symmetric(2.5, RandomSource(1), 10_000)
        assert np.all((v > 0) & (v < 1))
        assert isinstance(sample_beta_symmetric(2, RandomSource(1)), float)

    def test_rejects_small_k(self):
        with pytest.raises(ValueError):
            sample_beta_symmetric(0.5, RandomSource(1), 3)


class TestRejectionSampler:
    N = 100_000

    @pytest.mark.parametrize("k", [1, 2.5, 30, 1000])
    def test_mean_and_support(self, k):
        x = sample(SinKDistribution(k), RandomSource(3), self.N)
        assert np.all((x > 0) & (x < PI))
        se = x.std(ddof=1) / math.sqrt(self.N)
        assert abs(x.mean() - PI / 2) <= 4 * se

    def test_acceptance_rate_k5(self):
        d = SinKDistribution(5)
        s = SamplerStats()
        sample(d, RandomSource(11), self.N, stats=s)
        # independent evaluation of M_5 = 2^4 sqrt(pi) Γ(7/2)^2 / Γ(13/2)
        rate = 1.0 / bound_direct(5)
        sigma = math.sqrt(rate * (1 - rate) / s.proposals)
        assert s.acceptances == self.N
        assert abs(s.acceptance_rate - rate) <= 3 * sigma

    def test_stats_accumulate(self):
        d = SinKDistribution(2)
        s = SamplerStats()
        rng = RandomSource(1)
        sample(d, rng, 100, stats=s)
        sample(d, rng, stats=s)
        assert s.acceptances == 101
        assert s.proposals >= 101

    def test_determinism(self):
        d = SinKDistribution(7)
        a = sample(d, RandomSource(2024), 5000)
        b = sample(d, RandomSource(2024), 5000)
        assert np.array_equal(a, b)
        assert sample(d, RandomSource(1)) == sample(d, RandomSource(1))

    def test_accepts_bare_k(self):
        assert 0 < sample(4, RandomSource(1)) < PI

    def test_zero_size(self):
        s = SamplerStats()
        assert sample(SinKDistribution(3), RandomSource(1), 0, stats=s).size == 0
        assert s.proposals == 0

    def test_ks_real_k_against_quadrature_cdf(self):
        # non-integer k: reference CDF by numerical quadrature of the density
        d = SinKDistribution(2.5)
        x = sample(d, RandomSource(8), 20_000)
        grid = np.linspace(0, PI, 2001)
        dens = np.exp(log_density(d, np.clip(grid, 1e-300, np.nextafter(PI, 0))))
        cum = integrate.cumulative_trapezoid(dens, grid, initial=0.0)
        cum /= cum[-1]
        D = ks_statistic(x, lambda t: np.interp(t, grid, cum))
        assert D < 1.63 / math.sqrt(x.size)
