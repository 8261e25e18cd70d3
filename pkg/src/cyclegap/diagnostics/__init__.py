"""Post-estimation checks for the divergence regression."""

from .battery import DiagnosticsReport, run_battery
from .collinearity import VifRow, VifTable, classify_vif, vif
from .residual import TestResult, breusch_godfrey, breusch_pagan_godfrey, jarque_bera
from .stability import CUSUM_5PCT, CusumPath, cusum, cusum_bounds, recursive_residuals
from .unitroot import adf_test, critical_values

__all__ = [
    "CUSUM_5PCT",
    "CusumPath",
    "DiagnosticsReport",
    "TestResult",
    "VifRow",
    "VifTable",
    "adf_test",
    "breusch_godfrey",
    "breusch_pagan_godfrey",
    "classify_vif",
    "critical_values",
    "cusum",
    "cusum_bounds",
    "jarque_bera",
    "recursive_residuals",
    "run_battery",
    "vif",
]
