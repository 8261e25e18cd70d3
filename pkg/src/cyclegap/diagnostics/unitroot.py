"""Augmented Dickey-Fuller test with Schwarz lag selection."""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError, InsufficientData
from ..numerics.linalg import qr_factor
from ..series import QuarterlySeries
from .residual import TestResult

# MacKinnon (2010) response surfaces for the single-series tau statistic:
# cv(T) = b0 + b1/T + b2/T^2 + b3/T^3, rows are the 1%, 5%, 10% levels.
_TAU_SURFACES = {
    "none": (
        (-2.56574, -2.2358, -3.627, 0.0),
        (-1.94100, -0.2686, -3.365, 31.223),
        (-1.61682, 0.2656, -2.714, 25.364),
    ),
    "constant": (
        (-3.43035, -6.5393, -16.786, -79.433),
        (-2.86154, -2.8903, -4.234, -40.040),
        (-2.56677, -1.5384, -2.809, 0.0),
    ),
    "constant+trend": (
        (-3.95877, -9.0531, -28.428, -134.155),
        (-3.41049, -4.3904, -9.036, -45.374),
        (-3.12705, -2.5856, -3.925, -22.380),
    ),
}
LEVELS = ("1%", "5%", "10%")
_ALIASES = {"n": "none", "nc": "none", "c": "constant", "ct": "constant+trend"}


def _deterministic(spec: str) -> str:
    spec = _ALIASES.get(spec, spec)
    if spec not in _TAU_SURFACES:
        raise DomainError(f"deterministic terms must be one of {sorted(_TAU_SURFACES)}, got {spec!r}")
    return spec


def critical_values(nobs: int, deterministic: str = "constant") -> dict[str, float]:
    """Finite-sample 1/5/10% critical values for ``nobs`` regression rows."""
    det = _deterministic(deterministic)
    out = {}
    for level, (b0, b1, b2, b3) in zip(LEVELS, _TAU_SURFACES[det]):
        out[level] = b0 + b1 / nobs + b2 / nobs**2 + b3 / nobs**3
    return out


def default_max_lag(n: int) -> int:
    """Schwert's rule ``floor(12 (n/100)^(1/4))``."""
    return int(math.floor(12.0 * (n / 100.0) ** 0.25))


def _n_det(det: str) -> int:
    return {"none": 0, "constant": 1, "constant+trend": 2}[det]


def _adf_design(y: np.ndarray, p: int, first: int, det: str) -> tuple[np.ndarray, np.ndarray]:
    # rows t = first..n-2 of dy, dy[t] = y[t+1] - y[t]
    dy = np.diff(y)
    rows = np.arange(first, dy.size)
    cols = [y[rows]]
    for i in range(1, p + 1):
        cols.append(dy[rows - i])
    if det != "none":
        cols.append(np.ones(rows.size))
    if det == "constant+trend":
        cols.append(np.arange(1, rows.size + 1, dtype=np.float64))
    return dy[rows], np.column_stack(cols)


def _ols_core(y: np.ndarray, X: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    fac = qr_factor(X)
    b = fac.solve(y)
    e = y - X @ b
    ssr = float(e @ e)
    s2 = ssr / (y.size - X.shape[1])
    se = np.sqrt(s2 * np.diag(fac.xtx_inverse()))
    return b, se, ssr


def adf_test(
    s: QuarterlySeries | np.ndarray,
    deterministic: str = "constant",
    max_lag: int | None = None,
) -> TestResult:
    """Unit-root test on ``dy_t = g y_{t-1} + sum phi_i dy_{t-i} + det + e``.

    Every lag order ``0..max_lag`` is fitted on the common sample that the
    longest lag allows, and the order minimising the Schwarz criterion is
    kept (ties go to the shorter lag). The reported ``tau = g / se(g)`` comes
    from refitting at that order on the longest sample it allows.

    The statistic is compared with finite-sample critical values; no p-value
    is computed. ``auxiliary`` holds the chosen ``lag``, ``nobs``, the
    ``critical_values`` and boolean ``reject`` flags per level.
    """
    y = np.asarray(s.values if isinstance(s, QuarterlySeries) else s, dtype=np.float64).ravel()
    det = _deterministic(deterministic)
    n = y.size
    k_det = _n_det(det)
    if max_lag is None:
        max_lag = default_max_lag(n)
        # shrink the default until the longest regression is estimable
        while max_lag > 0 and n - max_lag - k_det - 2 <= max_lag + 1:
            max_lag -= 1
    if max_lag < 0:
        raise DomainError("max_lag must be non-negative")
    if n - max_lag - k_det - 2 <= 0:
        raise InsufficientData(f"series of length {n} too short for max_lag={max_lag}")

    nobs_common = n - 1 - max_lag
    sic = {}
    for p in range(max_lag + 1):
        dep, X = _adf_design(y, p, max_lag, det)
        if nobs_common <= X.shape[1]:
            raise InsufficientData(f"series of length {n} too short for max_lag={max_lag}")
        _, _, ssr = _ols_core(dep, X)
        if ssr <= 0:
            sic[p] = -math.inf
        else:
            sic[p] = math.log(ssr / nobs_common) + X.shape[1] * math.log(nobs_common) / nobs_common
    best = min(sic, key=lambda p: (sic[p], p))

    dep, X = _adf_design(y, best, best, det)
    b, se, _ = _ols_core(dep, X)
    tau = float(b[0] / se[0])
    nobs = dep.size
    cv = critical_values(nobs, det)
    return TestResult(
        "Augmented Dickey-Fuller", tau, None,
        {
            "lag": best,
            "max_lag": max_lag,
            "nobs": nobs,
            "deterministic": det,
            "critical_values": cv,
            "reject": {lvl: tau < c for lvl, c in cv.items()},
            "schwarz": sic,
        },
    )
