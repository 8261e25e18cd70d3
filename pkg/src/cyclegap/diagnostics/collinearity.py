"""Variance inflation factors."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..errors import RankDeficient
from ..numerics.linalg import as_matrix, qr_factor, solve_least_squares

ACCEPTABLE = "acceptable (<4)"
CONDITIONAL = "conditional (4-10)"
SEVERE = "severe (>10)"


def classify_vif(value: float) -> str:
    """Map a centred VIF to the <4 / 4-10 / >10 bands."""
    if value < 4.0:
        return ACCEPTABLE
    if value <= 10.0:
        return CONDITIONAL
    return SEVERE


@dataclass(frozen=True)
class VifRow:
    name: str
    coefficient_variance: float | None
    uncentered_vif: float
    centered_vif: float | None
    collinear: bool = False

    @property
    def classification(self) -> str | None:
        if self.centered_vif is None:
            return None
        return classify_vif(self.centered_vif)


@dataclass(frozen=True)
class VifTable:
    rows: tuple[VifRow, ...]

    def __getitem__(self, name: str) -> VifRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def max_centered(self) -> float:
        vals = [r.centered_vif for r in self.rows if r.centered_vif is not None]
        return max(vals) if vals else math.nan


def _aux_rss(target: np.ndarray, others: np.ndarray) -> float:
    # dependent columns among the others do not change their span; drop them
    while others.shape[1]:
        try:
            _, u = solve_least_squares(others, target)
        except RankDeficient as exc:
            others = np.delete(others, exc.column, axis=1)
            continue
        return float(u @ u)
    return float(target @ target)


def vif(exog, names: Sequence[str] | None = None, intercept: int | None = None,
        sigma2: float | None = None) -> VifTable:
    """Centred and uncentred variance inflation factors.

    Parameters
    ----------
    exog : array_like, shape (n, k)
        Full design, intercept column included.
    names : sequence of str, optional
    intercept : int, optional
        Column index of the intercept. Detected from a constant column when
        omitted; the centred factor is undefined for that column.
    sigma2 : float, optional
        Residual variance of the main regression. When given, the
        coefficient variance ``sigma2 * inv(X'X)_jj`` is reported.

    Notes
    -----
    Centred: ``1 / (1 - R^2_j)`` with ``R^2_j`` from regressing column ``j``
    on all other columns including the intercept. Uncentred: the same
    regression with ``R^2`` taken about zero, which equals
    ``(X'X)_jj inv(X'X)_jj``. A column that is an exact combination of the
    others is flagged ``collinear`` with infinite factors.
    """
    X = as_matrix(exog, "exog")
    n, k = X.shape
    if names is None:
        names = [f"x{j}" for j in range(k)]
    if intercept is None:
        const = np.flatnonzero((np.ptp(X, axis=0) == 0) & (X[0] != 0))
        intercept = int(const[0]) if const.size else None

    try:
        xtx_inv = qr_factor(X).xtx_inverse()
    except RankDeficient:
        xtx_inv = None

    rows = []
    for j in range(k):
        target = X[:, j]
        others = np.delete(X, j, axis=1)
        rss = _aux_rss(target, others)
        collinear = rss <= 1e-20 * float(target @ target)
        if collinear:
            unc = math.inf
            cen = None if j == intercept else math.inf
        else:
            unc = float(target @ target) / rss
            if j == intercept or intercept is None:
                cen = None
            else:
                tss = float(((target - target.mean()) ** 2).sum())
                cen = tss / rss if tss > 0 else math.inf
        cvar = None
        if sigma2 is not None and xtx_inv is not None:
            cvar = float(sigma2 * xtx_inv[j, j])
        rows.append(VifRow(str(names[j]), cvar, unc, cen, collinear))
    return VifTable(tuple(rows))
