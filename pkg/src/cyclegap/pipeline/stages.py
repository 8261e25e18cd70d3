"""Pipeline stages.

Each stage returns a :class:`StageOutput`: rendered files keyed by name and
a flat mapping of headline numbers used by the reproduction checks. Nothing
here touches the filesystem beyond reading inputs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from ..convergence import correlation_table
from ..diagnostics import DiagnosticsReport, run_battery
from ..errors import CycleGapError
from ..ingest import APPROXIMATE_SA, DatasetManifest
from ..ols import RegressionResult, fit
from ..series import Quarter
from . import reports
from .config import ConfigError, PipelineConfig
from .model import MODEL_VARIABLES, ModelInputs, build_gaps, build_inputs
from .svg import Line, line_chart


@dataclass
class StageOutput:
    files: dict[str, str] = field(default_factory=dict)
    metrics: dict[str, float] = field(default_factory=dict)

    def update(self, other: StageOutput) -> None:
        self.files.update(other.files)
        self.metrics.update(other.metrics)


def load_manifest(config: PipelineConfig) -> DatasetManifest:
    if not Path(config.manifest).is_file():
        raise ConfigError(f"manifest not found: {config.manifest}")
    return DatasetManifest.load(config.manifest)


def windows(config: PipelineConfig, manifest: DatasetManifest) -> list[tuple[str, tuple[str, str]]]:
    """Configured subperiods followed by the full sample, each with a label."""
    out = []
    for a, b in config.subperiods:
        if Quarter.parse(a) < manifest.sample_start or Quarter.parse(b) > manifest.sample_end:
            raise ConfigError(f"subperiod {a}-{b} lies outside the sample {manifest.sample_start}-{manifest.sample_end}")
        out.append((f"{a}-{b}", (a, b)))
    out.append(("full", (str(manifest.sample_start), str(manifest.sample_end))))
    return out


def sa_note(variables) -> str:
    if not variables:
        return ""
    return f"\nSeasonal adjustment: {APPROXIMATE_SA} for {', '.join(sorted(variables))}.\n"


# -- stages --------------------------------------------------------------------


def decompose(config: PipelineConfig, manifest: DatasetManifest) -> StageOutput:
    ro, ea, gap_ro, gap_ea = build_gaps(manifest, config.lam, config.cache_dir)
    out = StageOutput()
    out.files["gap_ro.csv"] = reports.gap_csv(ro, gap_ro)
    out.files["gap_ea.csv"] = reports.gap_csv(ea, gap_ea)
    labels = [str(q) for q in gap_ro.gap.quarters()]
    out.files["output_gaps.svg"] = line_chart(
        labels,
        [Line("Romania", gap_ro.gap.values), Line("Euro Area", gap_ea.gap.values, dashed=True)],
        f"Output gaps (HP filter, lambda={config.lam:g})",
        "% of potential GDP",
    )
    for tag, g in (("ro", gap_ro), ("ea", gap_ea)):
        out.metrics[f"gap.{tag}.first"] = float(g.gap.values[0])
        out.metrics[f"gap.{tag}.last"] = float(g.gap.values[-1])
        out.metrics[f"gap.{tag}.max_abs"] = float(abs(g.gap.values).max())
    return out


def correlate(config: PipelineConfig, manifest: DatasetManifest) -> StageOutput:
    _, _, gap_ro, gap_ea = build_gaps(manifest, config.lam, config.cache_dir)
    wins = windows(config, manifest)
    results = correlation_table(gap_ro.gap, gap_ea.gap, [w for _, w in wins])
    labels = [lab for lab, _ in wins]
    out = StageOutput()
    out.files["correlation.csv"] = reports.correlation_csv(labels, results)
    gdp_sa = [v for v in manifest.approximate_sa() if v in ("gdp_ro", "gdp_ea")]
    out.files["correlation.md"] = reports.correlation_md(labels, results) + sa_note(gdp_sa)
    for lab, r in zip(labels, results):
        out.metrics[f"correlation.{lab}"] = r.coefficient
    return out


def indices(config: PipelineConfig, inputs: ModelInputs) -> StageOutput:
    f = inputs.frame
    quarters = f[MODEL_VARIABLES[0]].quarters()
    rows = (
        (str(q), *(reports.full(f[v].values[i]) for v in MODEL_VARIABLES)) for i, q in enumerate(quarters)
    )
    out = StageOutput()
    out.files["indices.csv"] = reports.csv_text(("quarter", *MODEL_VARIABLES), rows)
    out.files["indices.svg"] = line_chart(
        [str(q) for q in quarters],
        [
            Line("ogdiv", f["ogdiv"].values),
            Line("ecstructureconv", f["ecstructureconv"].values, dashed=True),
            Line("wagestructureconv", f["wagestructureconv"].values),
        ],
        "Output-gap divergence and structure convergence",
    )
    for v in MODEL_VARIABLES:
        out.metrics[f"index.{v}.mean"] = float(f[v].values.mean())
    return out


def regress(config: PipelineConfig, inputs: ModelInputs) -> tuple[StageOutput, RegressionResult]:
    spec = config.regression
    unknown = sorted({r.name for r in (spec.dependent, *spec.regressors)} - set(inputs.frame.names()))
    if unknown:
        raise ConfigError(f"regression refers to unknown variables {unknown}; available: {list(MODEL_VARIABLES)}")
    res = fit(spec, inputs.frame)
    out = StageOutput()
    out.files["regression.md"] = reports.regression_md(res) + sa_note(inputs.approximate_sa)
    out.files["regression.csv"] = reports.regression_csv(res)
    for c in res.coefficients:
        out.metrics[f"coef.{c.name}"] = c.estimate
        out.metrics[f"se.{c.name}"] = c.std_error
    for key in ("r_squared", "adj_r_squared", "ssr", "log_likelihood", "durbin_watson", "f_stat"):
        val = getattr(res.stats, key)
        if val is not None:
            out.metrics[f"stat.{key}"] = val
    return out, res


def diagnose(config: PipelineConfig, inputs: ModelInputs, res: RegressionResult) -> tuple[StageOutput, DiagnosticsReport]:
    adf_series = {}
    labels = {}
    for reg in (config.regression.dependent, *config.regression.regressors):
        if reg.lag:
            continue
        adf_series[reg.label] = reg.build(inputs.frame)
        labels[reg.label] = reg.label
    rep = run_battery(
        res, config.bg_lags, adf_series, config.adf_deterministic, config.adf_max_lag,
    )
    out = StageOutput()
    out.files["diagnostics.md"] = reports.diagnostics_md(rep, labels)
    if rep.cusum is not None:
        c = rep.cusum
        out.files["cusum.csv"] = reports.cusum_csv(c)
        qs = [str(q) for q in c.quarters] if c.quarters else [str(i) for i in range(c.path.size)]
        out.files["cusum.svg"] = line_chart(
            qs,
            [Line("CUSUM", c.path), Line("5% significance", c.upper, dashed=True, color="#c0392b"),
             Line("", c.lower, dashed=True, color="#c0392b")],
            "CUSUM of recursive residuals",
        )
        out.metrics["diag.cusum.breached"] = float(c.breached)
        out.metrics["diag.cusum.final"] = float(c.path[-1])
    if rep.vif is not None:
        out.files["vif.csv"] = reports.vif_csv(rep.vif)
        for r in rep.vif:
            if r.centered_vif is not None:
                out.metrics[f"vif.{r.name}"] = r.centered_vif
    out.files["adf.csv"] = reports.adf_csv(rep.adf)
    for key in ("jarque_bera", "breusch_godfrey", "breusch_pagan_godfrey"):
        t = getattr(rep, key)
        if t is not None:
            out.metrics[f"diag.{key}.p"] = t.p_value
    if rep.breusch_pagan_godfrey is not None:
        out.metrics["diag.breusch_pagan_godfrey.f_p"] = rep.breusch_pagan_godfrey.auxiliary["f_p_value"]
    for name, t in rep.adf.items():
        out.metrics[f"adf.{name}.tau"] = t.statistic
    return out, rep


# -- reproduction checks -------------------------------------------------------

HARD, QUALITATIVE, VINTAGE = "hard", "qualitative", "vintage"


@dataclass(frozen=True)
class Check:
    name: str
    kind: str
    expected: float | str | None
    actual: float | str | None
    ok: bool

    @property
    def status(self) -> str:
        if self.ok:
            return "PASS"
        return "DIFF" if self.kind == VINTAGE else "FAIL"

    @property
    def failed(self) -> bool:
        return not self.ok and self.kind != VINTAGE

    @staticmethod
    def _text(v) -> str:
        return reports.fmt6(v) if isinstance(v, float) else str(v)

    @property
    def expected_text(self) -> str:
        return self._text(self.expected)

    @property
    def actual_text(self) -> str:
        return self._text(self.actual)


def load_expected(path: Path) -> dict:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"expected-values file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    unknown = set(raw) - {"tolerance", "values", "signs", "ordering", "vintage", "note"}
    if unknown:
        raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")
    return raw


def evaluate(metrics: dict[str, float], expected: dict) -> list[Check]:
    """Compare run metrics with an expected-values document.

    ``values`` are hard checks at ``tolerance`` (relative to max(1, |x|));
    ``signs`` and ``ordering`` are qualitative hard checks; ``vintage``
    entries carry their own tolerance and never fail the run.
    """
    tol = float(expected.get("tolerance", 1e-8))
    checks: list[Check] = []
    for name, want in sorted(expected.get("values", {}).items()):
        got = metrics.get(name)
        ok = got is not None and math.isfinite(got) and abs(got - want) <= tol * max(1.0, abs(want))
        checks.append(Check(name, HARD, float(want), got, ok))
    for name, sign in sorted(expected.get("signs", {}).items()):
        got = metrics.get(f"coef.{name}")
        ok = got is not None and ((got > 0) if sign == "+" else (got < 0))
        checks.append(Check(f"sign {name}", QUALITATIVE, sign, got, ok))
    for greater, lesser in expected.get("ordering", []):
        a, b = metrics.get(greater), metrics.get(lesser)
        ok = a is not None and b is not None and a > b
        checks.append(Check(f"{greater} > {lesser}", QUALITATIVE, ">", "" if a is None or b is None else f"{a:.6f} vs {b:.6f}", ok))
    for name, spec in sorted(expected.get("vintage", {}).items()):
        got = metrics.get(name)
        want = float(spec["value"])
        ok = got is not None and abs(got - want) <= float(spec["tol"])
        checks.append(Check(name, VINTAGE, want, got, ok))
    return checks


def run_all(config: PipelineConfig, manifest: DatasetManifest) -> tuple[StageOutput, dict[str, str]]:
    """Run every stage; failures are recorded and independent stages still run."""
    out = StageOutput()
    errors: dict[str, str] = {}

    def attempt(name, fn, *args):
        try:
            return fn(*args)
        except CycleGapError as exc:
            errors[name] = f"{type(exc).__name__}: {exc}"
            return None

    for name, fn in (("decompose", decompose), ("correlate", correlate)):
        r = attempt(name, fn, config, manifest)
        if r is not None:
            out.update(r)
    inputs = attempt("indices", build_inputs, manifest, config.lam, config.cache_dir)
    if inputs is None:
        errors.setdefault("regress", "skipped: model inputs unavailable")
        errors.setdefault("diagnose", "skipped: model inputs unavailable")
        return out, errors
    out.update(indices(config, inputs))
    r = attempt("regress", regress, config, inputs)
    if r is None:
        errors.setdefault("diagnose", "skipped: regression unavailable")
        return out, errors
    reg_out, res = r
    out.update(reg_out)
    d = attempt("diagnose", diagnose, config, inputs, res)
    if d is not None:
        out.update(d[0])
    return out, errors
