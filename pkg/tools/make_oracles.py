"""Build the frozen diagnostic fixtures and their reference values.

Regression fixtures and unit-root series are drawn with fixed seeds and
written to ``tests/fixtures``. Reference statistics come from statsmodels
(diagnostics) and mpmath at 50 digits (distribution tails), so the tests
compare the package with independent implementations without needing
either library at test time.

    python3 tools/make_oracles.py
"""

from __future__ import annotations

import json
from pathlib import Path

import mpmath
import numpy as np
import statsmodels
import statsmodels.api as sm
from statsmodels.stats.diagnostic import acorr_breusch_godfrey, het_breuschpagan, recursive_olsresiduals
from statsmodels.stats.outliers_influence import variance_inflation_factor
from statsmodels.stats.stattools import jarque_bera
from statsmodels.tsa.stattools import adfuller

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def _regressors(rng, n, k=4):
    t = np.arange(n)
    X = np.column_stack([
        rng.normal(0, 1, n),
        0.5 * rng.normal(0, 1, n) + 0.02 * t,
        np.sin(2 * np.pi * t / 12) + rng.normal(0, 0.3, n),
        rng.gamma(2.0, 1.0, n),
    ])
    return X[:, :k]


def regression_fixtures() -> dict[str, dict]:
    """name -> {seed, X, y, property}"""
    beta = np.array([0.8, -0.5, 1.2, 0.3])
    out = {}

    def add(name, seed, n, make_error, prop):
        rng = np.random.default_rng(seed)
        X = _regressors(rng, n)
        e = make_error(rng, n, X)
        y = 1.5 + X @ beta + e
        out[name] = {"seed": seed, "X": X, "y": y, "property": prop}

    add("clean_n63", 6301, 63, lambda r, n, X: r.normal(0, 1, n), "well-specified")
    add("clean_n200", 20001, 200, lambda r, n, X: r.normal(0, 1, n), "well-specified")

    def ar1(r, n, X, rho=0.9):
        u = r.normal(0, 1, n)
        e = np.empty(n)
        e[0] = u[0] / np.sqrt(1 - rho**2)
        for i in range(1, n):
            e[i] = rho * e[i - 1] + u[i]
        return e

    add("ar1_n200", 20002, 200, ar1, "AR(1) errors, rho 0.9: BG rejects at 1%")
    add(
        "hetero_n200", 20003, 200,
        lambda r, n, X: r.normal(0, 1, n) * (0.1 + 0.8 * X[:, 3]),
        "error scale grows with x4: BPG rejects at 1%",
    )

    def brk(r, n, X):
        e = r.normal(0, 0.5, n)
        e[n // 2:] += 3.0
        return e

    add("break_n200", 20004, 200, brk, "intercept shift at mid-sample: CUSUM breaches")
    return out


def unitroot_fixtures() -> dict[str, dict]:
    out = {}
    rng = np.random.default_rng(30001)
    out["random_walk_n300"] = {"seed": 30001, "y": np.cumsum(rng.normal(0, 1, 300)), "property": "I(1): no rejection at 1%"}
    rng = np.random.default_rng(30002)
    u = rng.normal(0, 1, 300)
    y = np.empty(300)
    y[0] = u[0]
    for i in range(1, 300):
        y[i] = 0.5 * y[i - 1] + u[i]
    out["ar05_n300"] = {"seed": 30002, "y": y, "property": "AR(0.5): rejection at 1%"}
    rng = np.random.default_rng(30003)
    t = np.arange(120)
    v = rng.normal(0, 1, 120)
    z = np.empty(120)
    z[0] = v[0]
    for i in range(1, 120):
        z[i] = 0.6 * z[i - 1] + v[i]
    out["trend_stationary_n120"] = {"seed": 30003, "y": 5 + 0.3 * t + z, "property": "trend-stationary"}
    rng = np.random.default_rng(30004)
    u = rng.normal(0, 1, 63)
    w = np.empty(63)
    w[0] = u[0]
    for i in range(1, 63):
        w[i] = 0.7 * w[i - 1] + u[i] + 0.4 * u[i - 1]
    out["arma_n63"] = {"seed": 30004, "y": w, "property": "ARMA(1,1), short sample"}
    return out


def regression_oracle(X: np.ndarray, y: np.ndarray) -> dict:
    exog = np.column_stack([X, np.ones(len(y))])
    m = sm.OLS(y, exog).fit()
    jb, jbp, skew, kurt = jarque_bera(m.resid)
    lm, lmp, f, fp = acorr_breusch_godfrey(m, nlags=2)
    blm, blmp, bf, bfp = het_breuschpagan(m.resid, exog)
    k = exog.shape[1]
    centered = [variance_inflation_factor(exog, j) for j in range(k - 1)]
    xtx = exog.T @ exog
    uncentered = list(np.diag(np.linalg.inv(xtx)) * np.diag(xtx))
    rr = recursive_olsresiduals(m)
    w = np.asarray(rr[4])[k:]
    path = np.cumsum(w) / np.std(w, ddof=1)
    return {
        "params": list(m.params),
        "jarque_bera": {"statistic": jb, "p_value": jbp, "skewness": skew, "kurtosis": kurt},
        "breusch_godfrey": {"statistic": lm, "p_value": lmp, "f_stat": f, "f_p_value": fp},
        "breusch_pagan_godfrey": {"statistic": blm, "p_value": blmp, "f_stat": bf, "f_p_value": bfp},
        "vif": {"centered": centered, "uncentered": uncentered},
        "cusum": {"path": list(path), "recursive_residuals": list(w)},
    }


def adf_oracle(y: np.ndarray) -> dict:
    out = {}
    for det, reg in (("constant", "c"), ("constant+trend", "ct"), ("none", "n")):
        tau, _, lag, nobs, cv, _ = adfuller(y, regression=reg, autolag="BIC")
        out[det] = {"tau": tau, "lag": int(lag), "nobs": int(nobs), "critical_values": dict(cv)}
    return out


DISTRIBUTION_CASES = [
    ("t_sf", (2.716263, 57)), ("t_sf", (0.5, 1)), ("t_sf", (3.0, 2)), ("t_sf", (1.96, 1000)),
    ("t_sf", (-1.3, 7)), ("t_sf", (12.0, 30)), ("t_sf", (0.01, 4.5)),
    ("f_sf", (18.72369, 5, 57)), ("f_sf", (1.0, 1, 1)), ("f_sf", (2.5, 3, 20)), ("f_sf", (0.2, 10, 5)),
    ("f_sf", (4.0, 2, 200)), ("f_sf", (1.1, 60, 60)), ("f_sf", (7.5, 1, 12)),
    ("normal_cdf", (0.0,)), ("normal_cdf", (1.96,)), ("normal_cdf", (-3.5,)), ("normal_cdf", (-8.0,)),
    ("normal_cdf", (0.3,)), ("normal_cdf", (5.0,)),
]


def _t_sf(x, df):
    x, df = mpmath.mpf(x), mpmath.mpf(df)
    tail = mpmath.betainc(df / 2, mpmath.mpf(1) / 2, 0, df / (df + x * x), regularized=True) / 2
    return tail if x >= 0 else 1 - tail


def _f_sf(x, d1, d2):
    x, d1, d2 = mpmath.mpf(x), mpmath.mpf(d1), mpmath.mpf(d2)
    return mpmath.betainc(d2 / 2, d1 / 2, 0, d2 / (d2 + d1 * x), regularized=True)


def _normal_cdf(x):
    return mpmath.ncdf(mpmath.mpf(x))


def distribution_oracles() -> list[dict]:
    mpmath.mp.dps = 50
    fns = {"t_sf": _t_sf, "f_sf": _f_sf, "normal_cdf": _normal_cdf}
    return [{"function": name, "args": list(args), "value": float(fns[name](*args))} for name, args in DISTRIBUTION_CASES]


def _write_matrix(path: Path, header: list[str], cols: np.ndarray) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in cols:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    provenance = {
        "generator": "tools/make_oracles.py",
        "statsmodels": statsmodels.__version__,
        "mpmath": mpmath.__version__,
        "numpy": np.__version__,
    }
    oracles = {"provenance": provenance, "regression": {}, "unitroot": {}}
    for name, fx in regression_fixtures().items():
        X, y = fx["X"], fx["y"]
        header = ["y"] + [f"x{j + 1}" for j in range(X.shape[1])]
        _write_matrix(OUT / f"{name}.csv", header, np.column_stack([y, X]))
        oracles["regression"][name] = {"seed": fx["seed"], "property": fx["property"], **regression_oracle(X, y)}
    for name, fx in unitroot_fixtures().items():
        _write_matrix(OUT / f"{name}.csv", ["y"], fx["y"][:, None])
        oracles["unitroot"][name] = {"seed": fx["seed"], "property": fx["property"], **adf_oracle(fx["y"])}
    (OUT / "oracles.json").write_text(json.dumps(oracles, indent=2) + "\n", encoding="utf-8")
    dist = {"provenance": {"generator": "tools/make_oracles.py", "mpmath": mpmath.__version__, "dps": 50},
            "cases": distribution_oracles()}
    (OUT / "distribution_oracles.json").write_text(json.dumps(dist, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
