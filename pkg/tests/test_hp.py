from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cyclegap.errors import DegenerateTrend, DomainError, InsufficientData
from cyclegap.hp import (
    hp_decompose,
    hp_dual_system,
    hp_system,
    hp_trend,
    og_divergence,
    output_gap,
    second_difference_gram,
)
from cyclegap.series import QuarterlySeries
from oracle_helpers import dense_hp_trend, linear_fit, second_difference_matrix


def random_walk(rng, n, scale=1.0):
    return 100.0 + scale * np.cumsum(rng.normal(size=n))


class TestSystems:
    @pytest.mark.parametrize("n", [3, 4, 7, 30])
    def test_gram_matches_dense(self, n):
        K = second_difference_matrix(n)
        main, off1, off2 = second_difference_gram(n)
        G = K.T @ K
        np.testing.assert_array_equal(main, np.diag(G))
        np.testing.assert_array_equal(off1, np.diag(G, 1))
        np.testing.assert_array_equal(off2, np.diag(G, 2))

    def test_primal_system(self):
        n, lam = 9, 1600.0
        K = second_difference_matrix(n)
        np.testing.assert_allclose(hp_system(n, lam).to_dense(), np.eye(n) + lam * K.T @ K)

    def test_dual_system(self):
        n, lam = 9, 1600.0
        K = second_difference_matrix(n)
        np.testing.assert_allclose(hp_dual_system(n, lam).to_dense(), np.eye(n - 2) / lam + K @ K.T)


class TestTrend:
    @pytest.mark.parametrize("lam", [1.0, 100.0, 1600.0, 1e6])
    @pytest.mark.parametrize("n", [4, 5, 10, 64, 200])
    def test_matches_dense_solve(self, rng, n, lam):
        y = random_walk(rng, n)
        np.testing.assert_allclose(hp_trend(y, lam), dense_hp_trend(y, lam), atol=1e-8, rtol=0)

    def test_lambda_zero_is_identity(self, rng):
        y = random_walk(rng, 20)
        np.testing.assert_array_equal(hp_trend(y, 0.0), y)

    def test_huge_lambda_gives_linear_fit(self, rng):
        y = random_walk(rng, 120, scale=3.0)
        scale = np.abs(y).max()
        assert np.abs(hp_trend(y, 1e12) - linear_fit(y)).max() < 1e-4 * scale

    def test_linear_input_passes_through(self):
        y = 3.0 + 0.5 * np.arange(50)
        for lam in (1.0, 1600.0, 1e8):
            np.testing.assert_allclose(hp_trend(y, lam), y, atol=1e-9)

    def test_too_short(self):
        with pytest.raises(InsufficientData):
            hp_trend([1.0, 2.0, 3.0], 1600)

    @pytest.mark.parametrize("lam", [-1.0, np.inf, np.nan])
    def test_bad_lambda(self, lam):
        with pytest.raises(DomainError):
            hp_trend(np.ones(10), lam)

    @given(arrays(np.float64, st.integers(4, 80), elements=st.floats(-1e3, 1e3)), st.sampled_from([1.0, 1600.0, 1e5]))
    @settings(max_examples=150, deadline=None)
    def test_decomposition_identity(self, y, lam):
        s = QuarterlySeries("2000Q1", y)
        tc = hp_decompose(s, lam)
        scale = max(1.0, np.abs(y).max())
        assert np.abs(tc.trend.values + tc.cycle.values - y).max() <= 1e-9 * scale
        # the cycle sums to zero because K'K annihilates constants
        assert abs(tc.cycle.values.sum()) <= 1e-7 * scale * len(y)


class TestOutputGap:
    @pytest.fixture
    def gdp(self, rng):
        t = np.arange(64)
        return QuarterlySeries("2002Q1", 1e4 * np.exp(0.01 * t) * (1 + 0.02 * np.sin(t / 3)))

    def test_gap_definition(self, gdp):
        g = output_gap(gdp, 1600)
        tc = g.decomposition
        np.testing.assert_allclose(g.gap.values, 100 * tc.cycle.values / tc.trend.values)
        assert g.gap.start == gdp.start and len(g.gap) == 64

    def test_lambda_zero_gives_zero_gap(self, gdp):
        np.testing.assert_array_equal(output_gap(gdp, 0.0).gap.values, np.zeros(64))

    def test_rejects_non_positive_gdp(self):
        with pytest.raises(DomainError):
            output_gap(QuarterlySeries("2002Q1", [1.0, 2.0, -1.0, 3.0, 4.0]))

    def test_degenerate_trend(self):
        # a collapse at the end drags a nearly linear trend below zero
        y = np.r_[100.0 + 10 * np.arange(12.0), [1e-3] * 10]
        with pytest.raises(DegenerateTrend):
            output_gap(QuarterlySeries("2002Q1", y), 1e8)

    def test_divergence_is_absolute_difference(self, gdp):
        a = QuarterlySeries("2002Q1", [1.0, -2.0, 0.5])
        b = QuarterlySeries("2002Q2", [1.0, 1.0])
        d = og_divergence(a, b)
        assert str(d.start) == "2002Q2"
        np.testing.assert_array_equal(d.values, [3.0, 0.5])

    def test_divergence_symmetric(self, gdp):
        g1 = output_gap(gdp, 1600)
        g2 = output_gap(gdp.with_values(gdp.values * (1 + 0.01 * np.cos(np.arange(64)))), 1600)
        assert og_divergence(g1, g2) == og_divergence(g2, g1)
