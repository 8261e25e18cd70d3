"""CUSUM stability test on recursive residuals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateFit, InsufficientData, RankDeficient
from ..numerics.linalg import as_matrix, qr_factor
from ..series import Quarter

#: 5% boundary constant for the CUSUM path.
CUSUM_5PCT = 0.948


@dataclass(frozen=True)
class CusumPath:
    """Cumulated standardised recursive residuals and 5% bounds.

    Attributes
    ----------
    path : ndarray
        ``W_t`` for ``t = start..n`` (one value per recursive residual).
    upper, lower : ndarray
        Symmetric 5% boundary lines.
    recursive_residuals : ndarray
    sigma : float
        Standard deviation (ddof=1) of the recursive residuals.
    start : int
        Number of observations in the first fit (``k`` unless early blocks
        were singular).
    breached : bool
    quarters : list of Quarter or None
    """

    path: np.ndarray
    upper: np.ndarray
    lower: np.ndarray
    recursive_residuals: np.ndarray
    sigma: float
    start: int
    breached: bool
    quarters: list[Quarter] | None = None


def _is_full_rank(X: np.ndarray) -> bool:
    try:
        qr_factor(X)
    except RankDeficient:
        return False
    return True


def recursive_residuals(endog, exog) -> tuple[np.ndarray, int]:
    """One-step-ahead standardised prediction errors.

    ``w_t = (y_t - x_t' b_{t-1}) / sqrt(1 + x_t' (X_{t-1}' X_{t-1})^-1 x_t)``.
    The first fit uses the first ``k`` rows, or the shortest longer prefix
    that has full rank.

    Returns
    -------
    w : ndarray
    start : int
        Size of the first fitted block; ``len(w) == n - start``.
    """
    y = np.asarray(endog, dtype=np.float64).ravel()
    X = as_matrix(exog, "exog")
    n, k = X.shape
    start = k
    while start < n and not _is_full_rank(X[:start]):
        start += 1
    if start >= n:
        raise InsufficientData("no initial block of the design has full rank before the sample ends")
    fac = qr_factor(X[:start])
    beta = fac.solve(y[:start])
    P = fac.xtx_inverse()
    w = np.empty(n - start)
    for t in range(start, n):
        x = X[t]
        v = P @ x
        f = 1.0 + x @ v
        err = y[t] - x @ beta
        w[t - start] = err / np.sqrt(f)
        P = P - np.outer(v, v) / f
        beta = beta + P @ x * err
    return w, start


def cusum_bounds(n: int, k: int, level_const: float = CUSUM_5PCT) -> tuple[np.ndarray, np.ndarray]:
    """Straight-line bounds ``+-a [sqrt(n-k) + 2 (t-k) / sqrt(n-k)]``, t = k+1..n."""
    m = n - k
    steps = np.arange(1, m + 1)
    upper = level_const * (np.sqrt(m) + 2.0 * steps / np.sqrt(m))
    return upper, -upper


def cusum(endog, exog, start_quarter: Quarter | None = None) -> CusumPath:
    """CUSUM of recursive residuals with 5% significance lines."""
    X = as_matrix(exog, "exog")
    n, k = X.shape
    if n <= k + 1:
        raise InsufficientData("CUSUM needs n > k + 1")
    w, start = recursive_residuals(endog, X)
    if w.size < 2:
        raise InsufficientData("CUSUM needs at least two recursive residuals")
    sigma = float(np.std(w, ddof=1))
    if not sigma > 0:
        raise DegenerateFit("recursive residuals have zero spread")
    path = np.cumsum(w) / sigma
    upper, lower = cusum_bounds(n, start)
    breached = bool(np.any(np.abs(path) > upper))
    quarters = None
    if start_quarter is not None:
        quarters = [start_quarter + t for t in range(start, n)]
    return CusumPath(path, upper, lower, w, sigma, start, breached, quarters)
