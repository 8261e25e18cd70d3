"""Markdown and CSV renderers.

Every function here formats values it is given. Human tables use six
decimals; machine CSVs carry ``repr`` precision.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable, Sequence

from ..convergence import CorrelationResult
from ..diagnostics import CusumPath, DiagnosticsReport, TestResult, VifTable
from ..hp import OutputGapSeries
from ..ingest import format_number
from ..ols import RegressionResult
from ..series import QuarterlySeries


def fmt6(v: float | None) -> str:
    if v is None:
        return "NA"
    if isinstance(v, float) and not math.isfinite(v):
        return "inf" if v > 0 else ("-inf" if v < 0 else "NA")
    return f"{v:.6f}"


def full(v: float | None) -> str:
    if v is None:
        return ""
    return format_number(float(v))


def csv_text(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def md_table(header: Sequence[str], rows: Iterable[Sequence[str]], align: str | None = None) -> str:
    align = align or "l" + "r" * (len(header) - 1)
    rule = ["---:" if a == "r" else ":---" for a in align]
    lines = ["| " + " | ".join(header) + " |", "| " + " | ".join(rule) + " |"]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


# -- decompose -----------------------------------------------------------------


def gap_csv(gdp: QuarterlySeries, gap: OutputGapSeries) -> str:
    dec = gap.decomposition
    rows = (
        (str(q), full(a), full(t), full(c), full(g))
        for q, a, t, c, g in zip(gdp.quarters(), gdp.values, dec.trend.values, dec.cycle.values, gap.gap.values)
    )
    return csv_text(("quarter", "actual", "trend", "cycle", "gap_pct"), rows)


# -- correlate -----------------------------------------------------------------


def correlation_csv(labels: Sequence[str], results: Sequence[CorrelationResult]) -> str:
    rows = ((lab, str(r.start), str(r.end), r.n, full(r.coefficient)) for lab, r in zip(labels, results))
    return csv_text(("window", "start", "end", "n", "pearson"), rows)


def correlation_md(labels: Sequence[str], results: Sequence[CorrelationResult]) -> str:
    rows = [
        (lab, f"{r.start}-{r.end}", str(r.n), fmt6(r.coefficient), f"{100 * r.coefficient:.2f}%")
        for lab, r in zip(labels, results)
    ]
    return (
        "# Output-gap synchronization\n\n"
        "Pearson correlation between the two output-gap series.\n\n"
        + md_table(("Window", "Quarters", "n", "Pearson", "Percent"), rows)
    )


# -- regress -------------------------------------------------------------------


def regression_csv(res: RegressionResult) -> str:
    rows = [
        ("coefficient", c.name, full(c.estimate), full(c.std_error), full(c.t_stat), full(c.p_value))
        for c in res.coefficients
    ]
    st = res.stats
    for key in (
        "r_squared", "adj_r_squared", "se_of_regression", "ssr", "log_likelihood", "f_stat", "f_prob",
        "mean_dep", "sd_dep", "aic", "schwarz", "hannan_quinn", "durbin_watson",
    ):
        rows.append(("statistic", key, full(getattr(st, key)), "", "", ""))
    rows.append(("statistic", "n", str(st.n), "", "", ""))
    return csv_text(("kind", "name", "value", "std_error", "t_stat", "p_value"), rows)


def regression_md(res: RegressionResult) -> str:
    st = res.stats
    head = [
        f"Dependent Variable: {res.dependent}",
        "Method: Least Squares",
    ]
    if res.sample_start is not None:
        head.append(f"Sample (adjusted): {res.sample_start} {res.sample_end}")
    head.append(f"Included observations: {st.n} after adjustments")
    coef_rows = [(c.name, fmt6(c.estimate), fmt6(c.std_error), fmt6(c.t_stat), fmt6(c.p_value)) for c in res.coefficients]
    left = [
        ("R-squared", st.r_squared), ("Adjusted R-squared", st.adj_r_squared),
        ("S.E. of regression", st.se_of_regression), ("Sum squared resid", st.ssr),
        ("Log likelihood", st.log_likelihood), ("F-statistic", st.f_stat), ("Prob(F-statistic)", st.f_prob),
    ]
    right = [
        ("Mean dependent var", st.mean_dep), ("S.D. dependent var", st.sd_dep),
        ("Akaike info criterion", st.aic), ("Schwarz criterion", st.schwarz),
        ("Hannan-Quinn criter.", st.hannan_quinn), ("Durbin-Watson stat", st.durbin_watson), (None, None),
    ]
    summary_rows = [
        (a, fmt6(av), b or "", "" if b is None else fmt6(bv)) for (a, av), (b, bv) in zip(left, right)
    ]
    out = "# Regression\n\n" + "\n".join(f"- {h}" for h in head) + "\n\n"
    out += md_table(("Variable", "Coefficient", "Std. Error", "t-Statistic", "Prob."), coef_rows)
    out += "\n" + md_table(("Statistic", "Value", "Statistic", "Value"), summary_rows, "lrlr")
    if res.degenerate:
        out += "\nThe fit is exact; likelihood-based statistics are undefined.\n"
    return out


# -- diagnose ------------------------------------------------------------------


def _test_row(label: str, t: TestResult | None, failures: dict, key: str) -> tuple[str, ...]:
    if t is None:
        return (label, "NA", "NA", "NA", "NA", failures.get(key, "not run"))
    aux = t.auxiliary
    return (label, fmt6(t.statistic), fmt6(t.p_value), fmt6(aux.get("f_stat")), fmt6(aux.get("f_p_value")), "")


def diagnostics_md(rep: DiagnosticsReport, adf_labels: dict[str, str] | None = None) -> str:
    v = rep.verdicts()
    rows = [
        _test_row("Fisher (overall significance)", rep.fisher, rep.failures, "fisher"),
        _test_row("Jarque-Bera (normality)", rep.jarque_bera, rep.failures, "jarque_bera"),
        _test_row(
            rep.breusch_godfrey.name if rep.breusch_godfrey else "Breusch-Godfrey",
            rep.breusch_godfrey, rep.failures, "breusch_godfrey",
        ),
        _test_row("Breusch-Pagan-Godfrey", rep.breusch_pagan_godfrey, rep.failures, "breusch_pagan_godfrey"),
    ]
    # the Fisher row carries its statistic in the statistic column only
    if rep.fisher is not None:
        rows[0] = ("Fisher (overall significance)", fmt6(rep.fisher.statistic), fmt6(rep.fisher.p_value), "", "", "")
    out = "# Diagnostics\n\n## Probabilities\n\n"
    out += md_table(("Test", "Statistic", "Prob.", "F form", "Prob. F form", "Note"), rows, "lrrrrl")

    out += "\n## Stability (CUSUM, 5% bounds)\n\n"
    if rep.cusum is None:
        out += f"Not run: {rep.failures.get('cusum', 'unknown')}\n"
    else:
        c = rep.cusum
        out += f"- recursive residuals: {c.path.size}\n- sigma: {fmt6(c.sigma)}\n"
        out += f"- bounds breached: {'yes' if c.breached else 'no'}\n"

    out += "\n## Variance inflation factors\n\n"
    if rep.vif is None:
        out += f"Not run: {rep.failures.get('vif', 'unknown')}\n"
    else:
        rows = [
            (r.name, fmt6(r.coefficient_variance), fmt6(r.uncentered_vif), fmt6(r.centered_vif), r.classification or "NA")
            for r in rep.vif
        ]
        out += md_table(("Variable", "Coefficient Variance", "Uncentered VIF", "Centered VIF", "Assessment"), rows, "lrrrl")

    if rep.adf or any(k.startswith("adf:") for k in rep.failures):
        out += "\n## Unit roots (ADF, Schwarz lag selection)\n\n"
        rows = []
        for name, t in rep.adf.items():
            aux = t.auxiliary
            cv = aux["critical_values"]
            rows.append((
                (adf_labels or {}).get(name, name), fmt6(t.statistic), str(aux["lag"]), str(aux["nobs"]),
                fmt6(cv["1%"]), fmt6(cv["5%"]), fmt6(cv["10%"]),
                "reject" if aux["reject"]["5%"] else "do not reject",
            ))
        for key, msg in rep.failures.items():
            if key.startswith("adf:"):
                rows.append((key[4:], "NA", "NA", "NA", "NA", "NA", "NA", msg))
        out += md_table(("Series", "tau", "Lag", "n", "1%", "5%", "10%", "Unit root at 5%"), rows, "lrrrrrrl")

    out += "\n## Verdicts\n\n"
    out += md_table(
        ("Check", "Supports model"),
        [(k, "NA" if val is None else ("yes" if val else "no")) for k, val in v.items()],
        "ll",
    )
    out += "\n" + ("All checks pass." if rep.all_pass else "Not all checks pass.") + "\n"
    return out


def cusum_csv(c: CusumPath) -> str:
    labels = [str(q) for q in c.quarters] if c.quarters else [str(i) for i in range(c.start + 1, c.start + 1 + c.path.size)]
    rows = (
        (lab, full(w), full(p), full(lo), full(hi))
        for lab, w, p, lo, hi in zip(labels, c.recursive_residuals, c.path, c.lower, c.upper)
    )
    return csv_text(("quarter", "recursive_residual", "cusum", "lower_5pct", "upper_5pct"), rows)


def vif_csv(t: VifTable) -> str:
    rows = (
        (r.name, full(r.coefficient_variance), full(r.uncentered_vif), full(r.centered_vif), r.classification or "")
        for r in t
    )
    return csv_text(("variable", "coefficient_variance", "uncentered_vif", "centered_vif", "assessment"), rows)


def adf_csv(adf: dict[str, TestResult]) -> str:
    rows = []
    for name, t in adf.items():
        aux = t.auxiliary
        cv = aux["critical_values"]
        rows.append((
            name, aux["deterministic"], full(t.statistic), aux["lag"], aux["max_lag"], aux["nobs"],
            full(cv["1%"]), full(cv["5%"]), full(cv["10%"]),
            int(aux["reject"]["1%"]), int(aux["reject"]["5%"]), int(aux["reject"]["10%"]),
        ))
    return csv_text(
        ("series", "deterministic", "tau", "lag", "max_lag", "nobs", "cv_1pct", "cv_5pct", "cv_10pct",
         "reject_1pct", "reject_5pct", "reject_10pct"),
        rows,
    )


# -- reproduce -----------------------------------------------------------------


def check_matrix_md(checks: Sequence) -> str:
    rows = [
        (c.name, c.kind, "" if c.expected is None else c.expected_text, "" if c.actual is None else c.actual_text, c.status)
        for c in checks
    ]
    return "# Reproduction checks\n\n" + md_table(("Check", "Kind", "Expected", "Actual", "Status"), rows, "llrrl")
