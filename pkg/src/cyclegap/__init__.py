"""Output-gap divergence toolkit.

HP-filter output gaps, structural convergence indices, the divergence
regression and its diagnostic battery on quarterly series.
"""

from .convergence import (
    CorrelationResult,
    OpennessInputs,
    SectorShares,
    correlation_table,
    gdp_capita_convergence,
    gdp_capita_convergence_series,
    openness,
    openness_series,
    pearson,
    structure_convergence,
    structure_convergence_series,
)
from .errors import CycleGapError, DataError, FetchError, NumericalError
from .hp import DEFAULT_LAMBDA, OutputGapSeries, TrendCycle, hp_decompose, hp_trend, og_divergence, output_gap
from .ols import Coefficient, RegressionResult, RegressionSpec, Regressor, SummaryStatistics, fit, fit_matrix
from .series import Quarter, QuarterlySeries, SeriesFrame, align, diff, lag, log_transform, window

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_LAMBDA",
    "Coefficient",
    "CorrelationResult",
    "CycleGapError",
    "DataError",
    "FetchError",
    "NumericalError",
    "OpennessInputs",
    "OutputGapSeries",
    "Quarter",
    "QuarterlySeries",
    "RegressionResult",
    "RegressionSpec",
    "Regressor",
    "SectorShares",
    "SeriesFrame",
    "SummaryStatistics",
    "TrendCycle",
    "align",
    "correlation_table",
    "diff",
    "fit",
    "fit_matrix",
    "gdp_capita_convergence",
    "gdp_capita_convergence_series",
    "hp_decompose",
    "hp_trend",
    "lag",
    "log_transform",
    "og_divergence",
    "openness",
    "openness_series",
    "output_gap",
    "pearson",
    "structure_convergence",
    "structure_convergence_series",
    "window",
]
