from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclegap.errors import DomainError, NotPositiveDefinite, RankDeficient
from cyclegap.numerics import (
    PentadiagonalSystem,
    chi_square_cdf,
    chi_square_sf,
    f_cdf,
    f_sf,
    gammainc_lower,
    gammainc_upper,
    normal_cdf,
    normal_sf,
    qr_factor,
    solve_least_squares,
    solve_pentadiagonal,
    student_t_cdf,
    student_t_sf,
    student_t_two_sided,
)
from cyclegap.numerics.special import betainc, betainc_pair

FUNCTIONS = {"t_sf": student_t_sf, "f_sf": f_sf, "normal_cdf": normal_cdf}


class TestLeastSquares:
    def test_matches_normal_equations(self, rng):
        X = np.column_stack([rng.normal(size=(40, 3)), np.ones(40)])
        y = rng.normal(size=40)
        coef, resid = solve_least_squares(X, y)
        ref = np.linalg.solve(X.T @ X, X.T @ y)
        np.testing.assert_allclose(coef, ref, rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(X.T @ resid, 0.0, atol=1e-11)

    def test_xtx_inverse(self, rng):
        X = rng.normal(size=(30, 4))
        np.testing.assert_allclose(qr_factor(X).xtx_inverse(), np.linalg.inv(X.T @ X), rtol=1e-10)

    def test_rank_deficiency_names_column(self, rng):
        X = rng.normal(size=(20, 3))
        X = np.column_stack([X, X[:, 0] + 2 * X[:, 2]])
        with pytest.raises(RankDeficient) as info:
            qr_factor(X)
        assert info.value.column == 3


def _random_spd_penta(rng, n):
    # B'B with B banded of bandwidth 2 is pentadiagonal and SPD
    B = np.diag(rng.uniform(1, 2, n)) + np.diag(rng.normal(size=n - 1), 1) + np.diag(rng.normal(size=n - 2), 2)
    A = B.T @ B
    return PentadiagonalSystem(np.diag(A).copy(), np.diag(A, 1).copy(), np.diag(A, 2).copy())


class TestPentadiagonal:
    @pytest.mark.parametrize("n", [3, 4, 5, 17, 200])
    def test_matches_dense(self, rng, n):
        sys_ = _random_spd_penta(rng, n)
        b = rng.normal(size=n)
        x = solve_pentadiagonal(sys_, b)
        np.testing.assert_allclose(x, np.linalg.solve(sys_.to_dense(), b), rtol=1e-9, atol=1e-10)

    def test_matvec_matches_dense(self, rng):
        sys_ = _random_spd_penta(rng, 12)
        x = rng.normal(size=12)
        np.testing.assert_allclose(sys_.matvec(x), sys_.to_dense() @ x, rtol=1e-13)

    def test_indefinite_raises(self):
        sys_ = PentadiagonalSystem(np.array([1.0, -1.0, 1.0]), np.zeros(2), np.zeros(1))
        with pytest.raises(NotPositiveDefinite) as info:
            solve_pentadiagonal(sys_, np.ones(3))
        assert info.value.index == 1

    def test_bad_shapes(self):
        with pytest.raises(DomainError):
            PentadiagonalSystem(np.ones(4), np.ones(2), np.ones(2))
        with pytest.raises(DomainError):
            PentadiagonalSystem(np.ones(2), np.ones(1), np.ones(0))


class TestSpecialFunctions:
    @pytest.mark.parametrize("a,x", [(0.5, 0.1), (1.0, 2.0), (3.0, 0.5), (10.0, 12.0), (50.0, 40.0)])
    def test_gamma_pair_sums_to_one(self, a, x):
        assert gammainc_lower(a, x) + gammainc_upper(a, x) == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("x", [0.0, 0.3, 1.0, 5.0, 30.0])
    def test_gamma_shape_one_is_exponential(self, x):
        assert gammainc_upper(1.0, x) == pytest.approx(math.exp(-x), rel=1e-13, abs=1e-300)

    @pytest.mark.parametrize("x", [0.0, 0.2, 0.5, 0.9, 1.0])
    def test_beta_one_one_is_identity(self, x):
        assert betainc(1.0, 1.0, x) == pytest.approx(x, abs=1e-14)

    def test_beta_closed_form(self):
        # I_x(a, 1) = x^a
        for a in (0.5, 2.0, 7.5):
            assert betainc(a, 1.0, 0.37) == pytest.approx(0.37**a, rel=1e-13)

    @given(st.floats(0.5, 40), st.floats(0.5, 40), st.floats(0.0, 1.0))
    @settings(max_examples=200, deadline=None)
    def test_beta_symmetry(self, a, b, x):
        lo, hi = betainc_pair(a, b, x)
        assert lo + hi == pytest.approx(1.0, abs=1e-12)
        assert betainc(b, a, 1.0 - x) == pytest.approx(hi, abs=1e-12)


class TestDistributions:
    def test_committed_oracles(self, distribution_oracles):
        assert len(distribution_oracles) == 20
        for case in distribution_oracles:
            got = FUNCTIONS[case["function"]](*case["args"])
            assert got == pytest.approx(case["value"], rel=1e-9, abs=1e-15), case

    @pytest.mark.parametrize("x", np.linspace(0, 50, 101))
    def test_chi_square_two_df_is_exponential(self, x):
        assert abs(chi_square_sf(x, 2) - math.exp(-x / 2)) < 1e-12

    def test_complements(self):
        assert chi_square_sf(3.1, 4) + chi_square_cdf(3.1, 4) == pytest.approx(1.0, abs=1e-15)
        assert f_sf(2.2, 3, 17) + f_cdf(2.2, 3, 17) == pytest.approx(1.0, abs=1e-15)
        assert student_t_sf(1.4, 9) + student_t_cdf(1.4, 9) == pytest.approx(1.0, abs=1e-15)
        assert normal_sf(0.7) + normal_cdf(0.7) == pytest.approx(1.0, abs=1e-15)

    def test_t_with_one_df_is_cauchy(self):
        for x in (-3.0, 0.2, 1.0, 40.0):
            assert student_t_cdf(x, 1) == pytest.approx(0.5 + math.atan(x) / math.pi, abs=1e-14)

    def test_f_with_t_relation(self):
        # t_df^2 is F(1, df)
        assert f_sf(2.3**2, 1, 11) == pytest.approx(student_t_two_sided(2.3, 11), rel=1e-12)

    def test_deep_tails_do_not_cancel(self):
        assert 0 < f_sf(18.72369, 5, 57) < 1e-6
        assert 0 < chi_square_sf(400.0, 3) < 1e-80
        assert normal_cdf(-30.0) > 0

    def test_regression_p_value(self):
        assert student_t_two_sided(2.716263, 57) == pytest.approx(0.0087, abs=5e-4)

    @pytest.mark.parametrize("df", [0.5, 0.0, -1.0, math.inf, math.nan])
    def test_df_domain(self, df):
        with pytest.raises(DomainError):
            student_t_sf(1.0, df)

    def test_chi_square_support(self):
        with pytest.raises(DomainError):
            chi_square_sf(-0.1, 2)

    def test_against_scipy_grid(self):
        stats = pytest.importorskip("scipy.stats")
        for df in (1, 2, 5, 30, 120):
            for x in (0.01, 0.5, 1.0, 2.5, 7.0, 20.0):
                assert student_t_sf(x, df) == pytest.approx(stats.t.sf(x, df), rel=1e-10, abs=1e-300)
                assert chi_square_sf(x, df) == pytest.approx(stats.chi2.sf(x, df), rel=1e-10, abs=1e-300)
                assert f_sf(x, df, 40) == pytest.approx(stats.f.sf(x, df, 40), rel=1e-10, abs=1e-300)
