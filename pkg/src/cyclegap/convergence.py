"""Structural convergence indices, openness and cycle synchronisation.

The structure index compares two share vectors over the same sectors,

    conv = 1 - sum_z |a_z - b_z|,

so identical structures score 1 and fully disjoint ones score -1. The same
formula serves gross value added shares and wage shares.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GapError, InsufficientData, LabelMismatch, ZeroVariance
from .series import Quarter, QuarterlySeries, align, as_quarter, window

log = logging.getLogger(__name__)

SHARE_SUM_TOL = 1e-6


@dataclass(frozen=True)
class SectorShares:
    """Shares of a total by sector, as fractions summing to one."""

    shares: Mapping[str, float]

    def __post_init__(self) -> None:
        if not self.shares:
            raise DomainError("sector shares need at least one sector")
        clean = {}
        for label, v in self.shares.items():
            v = float(v)
            if not math.isfinite(v) or v < 0:
                raise DomainError(f"share for sector {label!r} must be finite and >= 0, got {v}")
            clean[str(label)] = v
        total = math.fsum(clean.values())
        if abs(total - 1.0) > SHARE_SUM_TOL:
            raise DomainError(f"shares sum to {total}, expected 1 within {SHARE_SUM_TOL}")
        object.__setattr__(self, "shares", clean)

    @classmethod
    def normalized(cls, values: Mapping[str, float]) -> SectorShares:
        """Rescale non-negative weights (percent, levels, ...) to fractions."""
        total = math.fsum(float(v) for v in values.values())
        if any(float(v) < 0 for v in values.values()):
            raise DomainError("shares must be non-negative")
        if not total > 0:
            raise DomainError("shares sum to zero; cannot normalise")
        return cls({k: float(v) / total for k, v in values.items()})

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(self.shares)

    def __getitem__(self, label: str) -> float:
        return self.shares[label]


@dataclass(frozen=True)
class OpennessInputs:
    imports: float
    exports: float
    gdp: float


@dataclass(frozen=True)
class CorrelationResult:
    coefficient: float
    start: Quarter
    end: Quarter
    n: int


def structure_convergence(a: SectorShares, b: SectorShares) -> float:
    """``1 - sum |a_z - b_z|`` over a shared sector set, in ``[-1, 1]``."""
    if a.labels != b.labels:
        only_a = sorted(a.labels - b.labels)
        only_b = sorted(b.labels - a.labels)
        raise LabelMismatch(f"sector labels differ: only in first {only_a}, only in second {only_b}")
    gap = math.fsum(abs(a[z] - b[z]) for z in sorted(a.labels))
    return 1.0 - gap


def structure_convergence_series(
    panel_a: Mapping[Quarter, SectorShares], panel_b: Mapping[Quarter, SectorShares]
) -> QuarterlySeries:
    """Per-quarter structure index over the quarters both panels cover.

    Quarters present in only one panel are dropped with a log message. The
    surviving quarters must be contiguous.
    """
    common = sorted(set(panel_a) & set(panel_b))
    dropped = sorted(set(panel_a) ^ set(panel_b))
    if dropped:
        log.info("structure index: dropping %d quarters not covered by both panels: %s",
                 len(dropped), ", ".join(map(str, dropped)))
    if not common:
        raise InsufficientData("share panels have no quarter in common")
    expected = [common[0] + i for i in range((common[-1] - common[0]) + 1)]
    missing = [q for q in expected if q not in set(common)]
    if missing:
        raise GapError(missing, "structure index")
    return QuarterlySeries(common[0], [structure_convergence(panel_a[q], panel_b[q]) for q in common])


def openness(inputs: OpennessInputs | None = None, *, imports: float | None = None,
             exports: float | None = None, gdp: float | None = None) -> float:
    """Trade openness ``100 * (imports + exports) / gdp``."""
    if inputs is None:
        inputs = OpennessInputs(imports, exports, gdp)
    if not inputs.gdp > 0:
        raise DomainError(f"GDP must be positive, got {inputs.gdp}")
    if inputs.imports < 0 or inputs.exports < 0:
        raise DomainError("imports and exports must be non-negative")
    return (inputs.imports + inputs.exports) / inputs.gdp * 100.0


def openness_series(imports: QuarterlySeries, exports: QuarterlySeries, gdp: QuarterlySeries) -> QuarterlySeries:
    f = align(imports=imports, exports=exports, gdp=gdp)
    vals = [
        openness(OpennessInputs(m, x, g))
        for m, x, g in zip(f["imports"].values, f["exports"].values, f["gdp"].values)
    ]
    return QuarterlySeries(f.start, vals)


def gdp_capita_convergence(gdp_cap_ro: float, gdp_cap_ea: float) -> float:
    """Ratio of the two per-capita levels, as a fraction."""
    if not (gdp_cap_ro > 0 and gdp_cap_ea > 0):
        raise DomainError(f"per-capita GDP must be positive, got {gdp_cap_ro}, {gdp_cap_ea}")
    return gdp_cap_ro / gdp_cap_ea


def gdp_capita_convergence_series(ro: QuarterlySeries, ea: QuarterlySeries) -> QuarterlySeries:
    f = align(ro=ro, ea=ea)
    return QuarterlySeries(
        f.start, [gdp_capita_convergence(a, b) for a, b in zip(f["ro"].values, f["ea"].values)]
    )


def pearson(
    x: QuarterlySeries,
    y: QuarterlySeries,
    window_range: tuple[Quarter | str, Quarter | str] | None = None,
) -> CorrelationResult:
    """Sample correlation of two series over an optional inclusive window.

    Raises
    ------
    InsufficientData
        Fewer than two common observations.
    ZeroVariance
        Either series is constant on the window.
    """
    f = align(x=x, y=y)
    xs, ys = f["x"], f["y"]
    if window_range is not None:
        lo, hi = as_quarter(window_range[0]), as_quarter(window_range[1])
        xs, ys = window(xs, lo, hi), window(ys, lo, hi)
    n = len(xs)
    if n < 2:
        raise InsufficientData("correlation needs at least two observations")
    if np.ptp(xs.values) == 0.0 or np.ptp(ys.values) == 0.0:
        raise ZeroVariance("correlation is undefined for a constant series")
    dx = xs.values - xs.values.mean()
    dy = ys.values - ys.values.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    r = max(-1.0, min(1.0, r))
    return CorrelationResult(r, xs.start, xs.end, n)


def correlation_table(
    x: QuarterlySeries, y: QuarterlySeries, windows: list[tuple[Quarter | str, Quarter | str]]
) -> list[CorrelationResult]:
    return [pearson(x, y, w) for w in windows]
