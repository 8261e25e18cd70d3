"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line (shown even under
output capture) and then asserts, so ``pytest -v`` doubles as the acceptance
report.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from cyclegap.convergence import SectorShares, openness, pearson, structure_convergence
from cyclegap.diagnostics import adf_test, breusch_godfrey, breusch_pagan_godfrey, cusum, jarque_bera, vif
from cyclegap.hp import hp_decompose, hp_trend, og_divergence
from cyclegap.numerics import chi_square_sf, f_sf, normal_cdf, student_t_sf
from cyclegap.ols import adjusted_r_squared, fit_matrix, gaussian_loglik, information_criteria, se_of_regression, t_test
from cyclegap.pipeline import PipelineConfig, run_all
from cyclegap.pipeline.cli import EXIT_OK, main
from cyclegap.pipeline.stages import load_manifest
from cyclegap.series import QuarterlySeries
from conftest import load_regression_fixture, load_unitroot_fixture
from oracle_helpers import brute_pearson, dense_hp_trend, linear_fit


@pytest.fixture
def report(capsys):
    """Collect failures for one criterion and print its verdict line."""

    class Report:
        def __init__(self):
            self.failures: list[str] = []

        def check(self, ok: bool, what: str) -> None:
            if not ok:
                self.failures.append(what)

        def finish(self, number: int, title: str) -> None:
            status = "PASS" if not self.failures else "FAIL"
            with capsys.disabled():
                print(f"\ncriterion {number}: {status}  {title}")
                for f in self.failures[:10]:
                    print(f"    {f}")
            assert not self.failures, self.failures

    return Report()


def close(a: float, b: float, tol: float) -> bool:
    return math.isfinite(a) and abs(a - b) <= tol


def test_criterion_1_printed_table_consistency(report):
    t0 = time.perf_counter()
    r2, n, k, ssr = 0.621560, 63, 6, 20.46161
    report.check(close(adjusted_r_squared(r2, n, k), 0.588364, 1e-4), "adjusted R-squared")
    report.check(close(se_of_regression(ssr, n, k), 0.599146, 1e-4), "S.E. of regression")
    report.check(close(gaussian_loglik(ssr, n), -53.96873, 1e-4), "log likelihood")
    aic, sc, hq = information_criteria(-53.96873, n, k)
    for got, want, name in ((aic, 1.903769, "AIC"), (sc, 2.107877, "Schwarz"), (hq, 1.984046, "Hannan-Quinn")):
        report.check(close(got, want, 1e-4), name)
    rows = [
        (0.260254, 0.095814, 2.716263, 0.0087),
        (-2.183034, 0.517612, -4.217490, 0.0001),
        (-2.217883, 0.931530, -2.380901, 0.0206),
        (-3.049311, 0.946082, -3.223091, 0.0021),
        (3.071194, 0.905555, 3.391507, 0.0013),
        (21.73555, 4.341422, 5.006483, 0.0000),
    ]
    for coef, se, t, p in rows:
        got_t, got_p = t_test(coef, se, n - k)
        report.check(close(got_t, t, 1e-4), f"t for coefficient {coef}")
        report.check(close(got_p, p, 5e-4), f"p for coefficient {coef}")
    elapsed = time.perf_counter() - t0
    report.check(elapsed < 1.0, f"runtime {elapsed:.3f}s")
    report.finish(1, "printed regression table is internally consistent")


def test_criterion_2_hp_filter_oracle(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2002)
    lambdas = (0.0, 100.0, 1600.0, 1e6)
    for i in range(50):
        n = int(rng.integers(10, 201))
        lam = lambdas[i % 4]
        y = np.cumsum(rng.normal(0, 1, n)) + rng.normal(0, 5) + 0.1 * np.arange(n)
        trend = hp_trend(y, lam)
        err = np.abs(trend - dense_hp_trend(y, lam)).max()
        report.check(err <= 1e-8, f"series {i} (n={n}, lambda={lam:g}): banded vs dense {err:.2e}")
        tc = hp_decompose(QuarterlySeries("2000Q1", y), lam)
        scale = max(1.0, np.abs(y).max())
        ident = np.abs(tc.trend.values + tc.cycle.values - y).max()
        report.check(ident <= 1e-9 * scale, f"series {i}: trend+cycle identity {ident:.2e}")
        lin = np.abs(hp_trend(y, 1e12) - linear_fit(y)).max()
        report.check(lin <= 1e-4 * scale, f"series {i}: lambda 1e12 vs linear fit {lin:.2e}")
    elapsed = time.perf_counter() - t0
    report.check(elapsed < 5.0, f"runtime {elapsed:.3f}s")
    report.finish(2, "banded HP solve matches dense solve on 50 random series")


def test_criterion_3_distribution_functions(report, distribution_oracles):
    for x in np.linspace(0.0, 50.0, 501):
        got, want = chi_square_sf(x, 2), math.exp(-x / 2)
        report.check(abs(got - want) <= 1e-12, f"chi2 df=2 at x={x}: {got} vs {want}")
    fns = {"t_sf": student_t_sf, "f_sf": f_sf, "normal_cdf": normal_cdf}
    report.check(len(distribution_oracles) == 20, "twenty committed oracle values")
    for case in distribution_oracles:
        got = fns[case["function"]](*case["args"])
        report.check(abs(got - case["value"]) <= 1e-9, f"{case['function']}{tuple(case['args'])}: {got} vs {case['value']}")
    report.check(f_sf(18.72369, 5, 57) < 1e-6, "F tail of the printed regression")
    report.finish(3, "distribution functions match closed forms and high-precision oracles")


def _diagnostics_against_oracles(report, oracles):
    tol = 1e-6
    for name, ref in oracles["regression"].items():
        y, X = load_regression_fixture(name)
        res = fit_matrix(X, y)
        for label, test, key in (
            ("JB", jarque_bera(res.residuals), "jarque_bera"),
            ("BG(2)", breusch_godfrey(res.residuals, X, 2), "breusch_godfrey"),
            ("BPG", breusch_pagan_godfrey(res.residuals, X), "breusch_pagan_godfrey"),
        ):
            want = ref[key]
            report.check(close(test.statistic, want["statistic"], tol), f"{name} {label} statistic")
            report.check(close(test.p_value, want["p_value"], tol), f"{name} {label} p-value")
            if "f_stat" in want:
                report.check(close(test.auxiliary["f_stat"], want["f_stat"], tol), f"{name} {label} F")
                report.check(close(test.auxiliary["f_p_value"], want["f_p_value"], tol), f"{name} {label} F p-value")
        rows = list(vif(X, intercept=X.shape[1] - 1))
        for row, want in zip(rows, ref["vif"]["centered"]):
            report.check(close(row.centered_vif, want, tol), f"{name} centered VIF {row.name}")
        for row, want in zip(rows, ref["vif"]["uncentered"]):
            report.check(close(row.uncentered_vif, want, tol), f"{name} uncentered VIF {row.name}")
        c = cusum(y, X)
        err = np.abs(c.path - np.asarray(ref["cusum"]["path"])).max()
        report.check(err <= tol, f"{name} CUSUM path {err:.2e}")
    for name, by_det in oracles["unitroot"].items():
        y = load_unitroot_fixture(name)
        for det, want in by_det.items():
            if det in ("seed", "property"):
                continue
            t = adf_test(y, det)
            report.check(t.auxiliary["lag"] == want["lag"], f"{name} ADF {det} SIC lag")
            report.check(close(t.statistic, want["tau"], tol), f"{name} ADF {det} tau")


def test_criterion_4_diagnostics_oracles(report, oracles):
    _diagnostics_against_oracles(report, oracles)

    def fitted(name):
        y, X = load_regression_fixture(name)
        return fit_matrix(X, y), y, X

    res, _, X = fitted("ar1_n200")
    report.check(breusch_godfrey(res.residuals, X, 2).p_value < 0.01, "AR(1) fixture fails BG at 1%")
    res, _, X = fitted("hetero_n200")
    report.check(breusch_pagan_godfrey(res.residuals, X).p_value < 0.01, "heteroskedastic fixture fails BPG at 1%")
    _, y, X = fitted("break_n200")
    report.check(cusum(y, X).breached, "break fixture breaches CUSUM bounds")
    report.check(not adf_test(load_unitroot_fixture("random_walk_n300")).auxiliary["reject"]["1%"],
                 "random walk is not rejected")
    report.check(adf_test(load_unitroot_fixture("ar05_n300")).auxiliary["reject"]["1%"],
                 "AR(0.5) is rejected at 1%")
    report.finish(4, "diagnostics match reference software and construction properties hold")


def test_criterion_5_convergence_properties(report):
    rng = np.random.default_rng(5005)
    labels = tuple("ABCDEFGHIJK")
    for i in range(1000):
        # structure index: symmetry and bounds, with sparse draws to hit edges
        wa = rng.random(11) * (rng.random(11) < 0.7)
        wb = rng.random(11) * (rng.random(11) < 0.7)
        wa[i % 11] += 0.1
        wb[(i + 3) % 11] += 0.1
        a = SectorShares.normalized(dict(zip(labels, wa)))
        b = SectorShares.normalized(dict(zip(labels, wb)))
        v = structure_convergence(a, b)
        report.check(v == structure_convergence(b, a), f"instance {i}: structure index symmetry")
        report.check(-1.0 <= v <= 1.0, f"instance {i}: structure index bounds {v}")
        report.check(structure_convergence(a, a) == 1.0, f"instance {i}: identical structures")
        j = int(rng.integers(0, 10))
        one = SectorShares.normalized({lab: float(lab == labels[j]) for lab in labels})
        other = SectorShares.normalized({lab: float(lab == labels[j + 1]) for lab in labels})
        report.check(structure_convergence(one, other) == -1.0, f"instance {i}: disjoint structures")

        # divergence of identical gaps is exactly zero
        g = QuarterlySeries("2002Q1", rng.normal(0, 2, 8))
        report.check(not og_divergence(g, g).values.any(), f"instance {i}: divergence of identical gaps")

        # openness is homogeneous of degree zero
        m, x, gdp, c = rng.uniform(0, 1e5), rng.uniform(0, 1e5), rng.uniform(1, 1e5), 10 ** rng.uniform(-3, 3)
        o1 = openness(imports=m, exports=x, gdp=gdp)
        o2 = openness(imports=c * m, exports=c * x, gdp=c * gdp)
        report.check(abs(o1 - o2) <= 1e-12 * max(1.0, o1), f"instance {i}: openness homogeneity")

        # Pearson: definitional oracle and affine invariance
        n = int(rng.integers(3, 61))
        xs = QuarterlySeries("2002Q1", rng.uniform(-1e3, 1e3, n))
        ys = QuarterlySeries("2002Q1", 0.5 * xs.values + rng.uniform(-1e3, 1e3, n))
        r = pearson(xs, ys).coefficient
        report.check(abs(r - brute_pearson(xs.values, ys.values)) <= 1e-12, f"instance {i}: Pearson oracle")
        p, q = 10 ** rng.uniform(-2, 2, 2)
        s, t = rng.uniform(-1e3, 1e3, 2)
        r2 = pearson(xs.with_values(p * xs.values + s), ys.with_values(q * ys.values + t)).coefficient
        report.check(abs(r - r2) <= 1e-12, f"instance {i}: Pearson affine invariance {abs(r - r2):.2e}")
        report.check(r == pearson(ys, xs).coefficient and -1.0 <= r <= 1.0, f"instance {i}: Pearson symmetry/bounds")
    report.finish(5, "convergence index properties hold on 1000 random instances")


def test_criterion_6_qualitative_findings(report):
    config = PipelineConfig()
    out, errors = run_all(config, load_manifest(config))
    report.check(not errors, f"stages failed: {errors}")
    m = out.metrics
    pre, post = m.get("correlation.2002Q1-2009Q4"), m.get("correlation.2010Q1-2017Q4")
    report.check(pre is not None and post is not None and pre > post, f"pre {pre} > post {post}")
    signs = {
        "LOG(OGDIV(-1))": 1, "LOG(ECSTRUCTURECONV)": -1, "LOG(OPENNESS)": -1,
        "LOG(WAGESTRUCTURECONV)": -1, "LOG(REALGDPCAPCONV)": 1,
    }
    for name, sign in signs.items():
        coef = m.get(f"coef.{name}")
        report.check(coef is not None and coef * sign > 0, f"sign of {name}: {coef}")
    report.finish(6, "shipped fixtures reproduce the correlation ordering and slope signs")


def test_criterion_7_end_to_end_determinism(report, tmp_path, capsys):
    t0 = time.perf_counter()
    first, second = tmp_path / "run1", tmp_path / "run2"
    report.check(main(["--offline", "--out", str(first), "reproduce"]) == EXIT_OK, "first run exits 0")
    report.check(main(["--offline", "--out", str(second), "reproduce"]) == EXIT_OK, "second run exits 0")
    elapsed = time.perf_counter() - t0
    capsys.readouterr()
    names = sorted(p.name for p in first.iterdir())
    report.check(names == sorted(p.name for p in second.iterdir()), "same file set")
    report.check(len(names) >= 15, f"outputs written: {names}")
    for name in names:
        same = (second / name).exists() and (first / name).read_bytes() == (second / name).read_bytes()
        report.check(same, f"{name} differs between runs")
    report.check(elapsed < 30.0, f"runtime {elapsed:.2f}s for two runs")
    report.finish(7, "reproduce exits 0 with byte-identical outputs")
