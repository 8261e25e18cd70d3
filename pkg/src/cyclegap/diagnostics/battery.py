"""Run every post-estimation check on one regression and collect the verdicts."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field

from ..errors import CycleGapError, DegenerateFit
from ..ols import RegressionResult
from ..series import QuarterlySeries
from .collinearity import VifTable, vif
from .residual import TestResult, breusch_godfrey, breusch_pagan_godfrey, jarque_bera
from .stability import CusumPath, cusum
from .unitroot import adf_test

log = logging.getLogger(__name__)

VIF_THRESHOLD = 4.0


@dataclass(frozen=True)
class DiagnosticsReport:
    """Verdicts of the post-estimation battery.

    Members that raised are ``None`` and their error message is kept in
    ``failures``.
    """

    fisher: TestResult | None
    jarque_bera: TestResult | None
    breusch_godfrey: TestResult | None
    breusch_pagan_godfrey: TestResult | None
    cusum: CusumPath | None
    vif: VifTable | None
    adf: dict[str, TestResult] = field(default_factory=dict)
    failures: dict[str, str] = field(default_factory=dict)
    level: float = 0.05

    def verdicts(self) -> dict[str, bool | None]:
        """``True`` where the check supports the model, ``None`` where it could not run."""
        lvl = self.level
        out: dict[str, bool | None] = {}
        out["fisher"] = None if self.fisher is None else self.fisher.p_value < lvl
        for name in ("jarque_bera", "breusch_godfrey", "breusch_pagan_godfrey"):
            t = getattr(self, name)
            out[name] = None if t is None else t.p_value >= lvl
        out["cusum"] = None if self.cusum is None else not self.cusum.breached
        if self.vif is None:
            out["vif"] = None
        else:
            vals = [r.centered_vif for r in self.vif if r.centered_vif is not None]
            out["vif"] = all(v < VIF_THRESHOLD for v in vals)
        return out

    @property
    def all_pass(self) -> bool:
        return all(v is True for v in self.verdicts().values())


def _fisher(result: RegressionResult) -> TestResult | None:
    if result.f_stat is None:
        return None
    return TestResult(
        "Fisher (overall significance)", result.f_stat, result.f_prob,
        {"df": (result.k - 1, result.n - result.k)},
    )


def run_battery(
    result: RegressionResult,
    bg_lags: int = 2,
    adf_series: Mapping[str, QuarterlySeries] | None = None,
    adf_deterministic: str = "constant",
    adf_max_lag: int | None = None,
    level: float = 0.05,
) -> DiagnosticsReport:
    """F, Jarque-Bera, Breusch-Godfrey, Breusch-Pagan-Godfrey, CUSUM and VIF.

    ADF tests run on ``adf_series`` when given. A failing member does not
    stop the others.
    """
    failures: dict[str, str] = {}
    e, X, y = result.residuals, result.design, result.endog

    def attempt(name, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except CycleGapError as exc:
            log.warning("diagnostic %s failed: %s", name, exc)
            failures[name] = f"{type(exc).__name__}: {exc}"
            return None

    def exact_fit(*_):
        raise DegenerateFit("the fit is exact; residuals are rounding noise")

    fisher = attempt("fisher", _fisher, result)
    if result.degenerate:
        # statistics of rounding noise would look meaningful but are not
        jb = attempt("jarque_bera", exact_fit)
        bg = attempt("breusch_godfrey", exact_fit)
        bpg = attempt("breusch_pagan_godfrey", exact_fit)
        cs = attempt("cusum", exact_fit)
    else:
        jb = attempt("jarque_bera", jarque_bera, e)
        bg = attempt("breusch_godfrey", breusch_godfrey, e, X, bg_lags)
        bpg = attempt("breusch_pagan_godfrey", breusch_pagan_godfrey, e, X)
        cs = attempt("cusum", cusum, y, X, result.sample_start)
    intercept = result.names.index("C") if "C" in result.names else None
    vt = attempt("vif", vif, X, result.names, intercept, result.se_of_regression**2)

    adf = {}
    for name, s in (adf_series or {}).items():
        r = attempt(f"adf:{name}", adf_test, s, adf_deterministic, adf_max_lag)
        if r is not None:
            adf[name] = r
    return DiagnosticsReport(fisher, jb, bg, bpg, cs, vt, adf, failures, level)
