"""Residual tests: normality, serial correlation, heteroskedasticity."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..errors import DegenerateFit, DomainError, InsufficientData, ZeroVariance
from ..numerics.distributions import chi_square_sf, f_sf
from ..numerics.linalg import as_matrix, solve_least_squares


@dataclass(frozen=True)
class TestResult:
    """Outcome of one diagnostic test.

    Attributes
    ----------
    name : str
    statistic : float
    p_value : float or None
        Absent for tests read against boundaries or thresholds.
    auxiliary : dict
        Named extras such as degrees of freedom or alternative variants.
    """

    __test__ = False  # keep pytest from collecting this class

    name: str
    statistic: float
    p_value: float | None = None
    auxiliary: dict[str, Any] = field(default_factory=dict)

    def passed(self, level: float = 0.05) -> bool | None:
        if self.p_value is None:
            return None
        return self.p_value >= level


def _r_squared(y: np.ndarray, resid: np.ndarray, centered: bool) -> float:
    tss = float(((y - y.mean()) ** 2).sum()) if centered else float(y @ y)
    if tss == 0.0:
        return 0.0
    return 1.0 - float(resid @ resid) / tss


def _has_constant(X: np.ndarray) -> bool:
    return bool(np.any((np.ptp(X, axis=0) == 0) & (X[0] != 0)))


def jarque_bera(residuals) -> TestResult:
    """Jarque-Bera normality test from moment skewness and kurtosis.

    ``JB = n/6 * (S^2 + (K - 3)^2 / 4)``, referred to chi-square(2).
    """
    e = np.asarray(residuals, dtype=np.float64).ravel()
    n = e.size
    if n < 4:
        raise InsufficientData("Jarque-Bera needs at least 4 residuals")
    d = e - e.mean()
    m2 = float(np.mean(d**2))
    if m2 == 0.0:
        raise ZeroVariance("residuals are constant")
    skew = float(np.mean(d**3)) / m2**1.5
    kurt = float(np.mean(d**4)) / m2**2
    jb = n / 6.0 * (skew**2 + (kurt - 3.0) ** 2 / 4.0)
    return TestResult(
        "Jarque-Bera", jb, chi_square_sf(jb, 2),
        {"df": 2, "skewness": skew, "kurtosis": kurt, "n": n},
    )


def breusch_godfrey(residuals, exog, lags: int = 2) -> TestResult:
    """Breusch-Godfrey LM test for serial correlation up to order ``lags``.

    Residuals are regressed on the original regressors plus ``lags`` of
    their own lags; pre-sample lags are set to zero so the auxiliary
    regression keeps all ``n`` observations. ``LM = n R^2`` is referred to
    chi-square(``lags``); the F form is reported in ``auxiliary``.
    """
    if lags < 1:
        raise DomainError("Breusch-Godfrey needs lags >= 1")
    e = np.asarray(residuals, dtype=np.float64).ravel()
    X = as_matrix(exog, "exog")
    n, k = X.shape
    if e.size != n:
        raise ValueError("residuals and exog disagree on n")
    if n - k - lags <= 0:
        raise InsufficientData(f"n={n} too small for k={k} regressors and {lags} lags")
    lagged = np.zeros((n, lags))
    for j in range(1, lags + 1):
        lagged[j:, j - 1] = e[:-j]
    Z = np.column_stack([X, lagged])
    _, u = solve_least_squares(Z, e)
    r2 = _r_squared(e, u, _has_constant(X))
    lm = n * r2
    df_resid = n - k - lags
    ssr_u = float(u @ u)
    ssr_r = float(e @ e)
    f = ((ssr_r - ssr_u) / lags) / (ssr_u / df_resid) if ssr_u > 0 else math.inf
    return TestResult(
        f"Breusch-Godfrey ({lags} lags)", lm, chi_square_sf(max(lm, 0.0), lags),
        {"df": lags, "f_stat": f, "f_p_value": f_sf(max(f, 0.0), lags, df_resid) if math.isfinite(f) else 0.0,
         "f_df": (lags, df_resid), "r_squared": r2, "n": n},
    )


def breusch_pagan_godfrey(residuals, exog) -> TestResult:
    """Breusch-Pagan-Godfrey test of squared residuals on the regressors.

    Both forms are reported: ``LM = n R^2`` against chi-square(k - 1), which
    is the headline ``p_value``, and the auxiliary regression F statistic
    against F(k - 1, n - k).
    """
    e = np.asarray(residuals, dtype=np.float64).ravel()
    X = as_matrix(exog, "exog")
    if not _has_constant(X):
        X = np.column_stack([X, np.ones(X.shape[0])])
    n, k = X.shape
    if e.size != n:
        raise ValueError("residuals and exog disagree on n")
    if k < 2:
        raise DomainError("Breusch-Pagan-Godfrey needs at least one regressor besides the constant")
    if n <= k:
        raise InsufficientData("too few observations for the auxiliary regression")
    e2 = e**2
    if np.ptp(e2) == 0.0:
        raise DegenerateFit("squared residuals are constant")
    _, u = solve_least_squares(X, e2)
    r2 = _r_squared(e2, u, centered=True)
    lm = n * r2
    df1, df2 = k - 1, n - k
    f = (r2 / df1) / ((1.0 - r2) / df2) if r2 < 1 else math.inf
    return TestResult(
        "Breusch-Pagan-Godfrey", lm, chi_square_sf(max(lm, 0.0), df1),
        {"df": df1, "f_stat": f, "f_p_value": f_sf(max(f, 0.0), df1, df2) if math.isfinite(f) else 0.0,
         "f_df": (df1, df2), "r_squared": r2, "n": n},
    )
