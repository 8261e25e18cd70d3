"""Hodrick-Prescott trend/cycle split and percent output gaps.

The trend ``tau`` minimises

    sum_t (y_t - tau_t)^2 + lam * sum_t (tau_t - 2 tau_{t-1} + tau_{t-2})^2

whose first-order conditions are the pentadiagonal system
``(I + lam K'K) tau = y`` with ``K`` the (n-2) x n second-difference
operator. No endpoint padding is applied.

That system has condition number near ``1 + 16 lam``, so it is solved in
the equivalent dual form: with ``w = lam K tau``,

    (I / lam + K K') w = K y,    cycle = K' w,    tau = y - cycle,

which is pentadiagonal too and stays well conditioned as ``lam`` grows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTrend, DomainError, InsufficientData
from .numerics.linalg import PentadiagonalSystem, solve_pentadiagonal
from .series import QuarterlySeries, align

#: Conventional smoothing weight for quarterly data.
DEFAULT_LAMBDA = 1600.0


@dataclass(frozen=True)
class TrendCycle:
    """Trend (potential output) and cycle of one series."""

    trend: QuarterlySeries
    cycle: QuarterlySeries
    lam: float


@dataclass(frozen=True)
class OutputGapSeries:
    """Output gap in percent of potential, ``100 * cycle / trend``."""

    gap: QuarterlySeries
    decomposition: TrendCycle | None = None


def second_difference_gram(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Diagonals ``(main, off1, off2)`` of ``K'K`` for length ``n >= 3``."""
    if n < 3:
        raise InsufficientData("second differences need at least 3 observations")
    kernel = np.array([1.0, -2.0, 1.0])
    main = np.zeros(n)
    off1 = np.zeros(n - 1)
    off2 = np.zeros(n - 2)
    for r in range(n - 2):
        main[r : r + 3] += kernel**2
        off1[r : r + 2] += kernel[:-1] * kernel[1:]
        off2[r] += kernel[0] * kernel[2]
    return main, off1, off2


def hp_system(n: int, lam: float) -> PentadiagonalSystem:
    """The primal system ``I + lam K'K``."""
    main, off1, off2 = second_difference_gram(n)
    return PentadiagonalSystem(1.0 + lam * main, lam * off1, lam * off2)


def hp_dual_system(n: int, lam: float) -> PentadiagonalSystem:
    """The dual system ``I / lam + K K'`` of size ``n - 2``."""
    m = n - 2
    main = np.full(m, 6.0)
    off1 = np.full(m - 1, -4.0)
    off2 = np.ones(m - 2)
    return PentadiagonalSystem(main + 1.0 / lam, off1, off2)


def _second_difference(y: np.ndarray) -> np.ndarray:
    return y[2:] - 2.0 * y[1:-1] + y[:-2]


def _second_difference_adjoint(w: np.ndarray) -> np.ndarray:
    out = np.zeros(w.size + 2)
    out[:-2] += w
    out[1:-1] -= 2.0 * w
    out[2:] += w
    return out


def hp_trend(y, lam: float = DEFAULT_LAMBDA) -> np.ndarray:
    """Trend component of a plain array."""
    yv = np.asarray(y, dtype=np.float64).ravel()
    lam = float(lam)
    if not np.isfinite(lam) or lam < 0:
        raise DomainError(f"lambda must be a finite non-negative number, got {lam}")
    if yv.size < 4:
        raise InsufficientData(f"HP filter needs at least 4 observations, got {yv.size}")
    if lam == 0.0:
        return yv.copy()
    rhs = _second_difference(yv)
    if yv.size < 5:
        # two unknowns: too small for the banded kernel
        w = np.linalg.solve(np.array([[6.0 + 1.0 / lam, -4.0], [-4.0, 6.0 + 1.0 / lam]]), rhs)
    else:
        w = solve_pentadiagonal(hp_dual_system(yv.size, lam), rhs)
    return yv - _second_difference_adjoint(w)


def hp_decompose(y: QuarterlySeries, lam: float = DEFAULT_LAMBDA) -> TrendCycle:
    """Split ``y`` into trend and cycle with smoothing weight ``lam``.

    Raises
    ------
    InsufficientData
        If ``y`` has fewer than four observations.
    DomainError
        If ``lam`` is negative or not finite.
    """
    trend = hp_trend(y.values, lam)
    return TrendCycle(
        trend=y.with_values(trend),
        cycle=y.with_values(y.values - trend),
        lam=float(lam),
    )


def output_gap(real_gdp: QuarterlySeries, lam: float = DEFAULT_LAMBDA) -> OutputGapSeries:
    """Gap between real GDP and its HP trend in percent of the trend.

    The filter runs on levels. Positive values are expansionary phases,
    negative ones recessionary.
    """
    if np.any(real_gdp.values <= 0):
        raise DomainError("real GDP must be strictly positive")
    tc = hp_decompose(real_gdp, lam)
    bad = np.flatnonzero(tc.trend.values <= 0)
    if bad.size:
        q = real_gdp.start + int(bad[0])
        raise DegenerateTrend(f"trend is non-positive at {q}")
    gap = 100.0 * tc.cycle.values / tc.trend.values
    return OutputGapSeries(real_gdp.with_values(gap), tc)


def _gap_series(g: OutputGapSeries | QuarterlySeries) -> QuarterlySeries:
    return g.gap if isinstance(g, OutputGapSeries) else g


def og_divergence(
    gap_a: OutputGapSeries | QuarterlySeries, gap_b: OutputGapSeries | QuarterlySeries
) -> QuarterlySeries:
    """Absolute difference between two gap series on their common range."""
    frame = align(a=_gap_series(gap_a), b=_gap_series(gap_b))
    return frame["a"].with_values(np.abs(frame["a"].values - frame["b"].values))
