"""Generate the synthetic quarterly dataset shipped with the package.

The series mimic the magnitudes of Romanian and euro-area national accounts
for 2002Q1-2017Q4 but are drawn from a fixed-seed generator:

* euro-area real GDP: smooth trend times (1 + designed cycle), with a boom
  into 2008, a deep 2009 trough and a second dip in 2012-13;
* four driver series (economic and wage structure convergence, openness,
  GDP per capita convergence) built from 11-sector share panels and
  trade/GDP levels;
* the gap divergence follows a log-linear law of motion in those drivers,
  and Romanian GDP is the euro-area cycle plus (or minus) that divergence.
  Before 2010 the divergence amplifies the euro-area cycle, afterwards its
  sign follows an independent oscillation, which weakens co-movement.

Run from the repository root::

    python3 tools/make_fixtures.py
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

import numpy as np

from cyclegap.hp import hp_trend

SEED = 20200417
START_YEAR, N = 2002, 64
SECTORS = ("A", "B_D_E", "C", "F", "G-I", "J", "K", "L", "M_N", "O-Q", "R-U")
EA_GVA = np.array([0.017, 0.035, 0.160, 0.053, 0.190, 0.045, 0.050, 0.110, 0.100, 0.190, 0.050])
EA_WAGE = np.array([0.010, 0.030, 0.205, 0.065, 0.215, 0.050, 0.055, 0.010, 0.110, 0.210, 0.040])
# direction in which Romania departs from the euro-area structure (sums to 0, L1 norm 1)
GVA_TILT = np.array([0.20, 0.05, 0.15, 0.10, -0.15, 0.0, 0.0, -0.10, -0.10, -0.15, 0.0])
WAGE_TILT = np.array([0.10, 0.15, 0.10, 0.15, -0.15, 0.0, 0.0, 0.0, -0.10, -0.20, -0.05])

# law of motion of log divergence
BETA = {"lag": 0.26, "ecs": -2.2, "open": -2.2, "wsc": -3.0, "gcap": 3.1}
NOISE_SD = 0.35
CORRECTION_ROUNDS = 40


def quarters() -> list[str]:
    return [f"{START_YEAR + i // 4}Q{i % 4 + 1}" for i in range(N)]


def ea_cycle(t: np.ndarray) -> np.ndarray:
    """Designed euro-area output gap in percent."""
    boom = 2.2 * np.exp(-(((t - 24) / 7.0) ** 2))
    bust = -3.2 * np.exp(-(((t - 29) / 4.0) ** 2))
    second = -1.4 * np.exp(-(((t - 45) / 5.0) ** 2))
    early = -0.8 * np.exp(-(((t - 6) / 5.0) ** 2))
    return boom + bust + second + early


def build(rng: np.random.Generator) -> dict[str, object]:
    t = np.arange(N, dtype=float)
    s = t / (N - 1)

    # drivers ------------------------------------------------------------------
    ecs = 0.62 + 0.20 * s + 0.05 * np.sin(2 * np.pi * t / 22) + rng.normal(0, 0.012, N)
    wsc = 0.60 + 0.18 * s**1.3 + 0.06 * np.sin(2 * np.pi * t / 17 + 1.0) + rng.normal(0, 0.012, N)
    opn = 0.66 + 0.10 * np.sin(2 * np.pi * t / 30 + 0.4) + 0.08 * s + rng.normal(0, 0.015, N)
    gcap = 0.32 + 0.14 * s + 0.05 * np.sin(2 * np.pi * t / 13) + rng.normal(0, 0.006, N)

    ea_gva = np.outer(np.ones(N), EA_GVA) + rng.normal(0, 0.0008, (N, len(SECTORS)))
    ea_wage = np.outer(np.ones(N), EA_WAGE) + rng.normal(0, 0.0008, (N, len(SECTORS)))
    ea_gva = np.abs(ea_gva) / np.abs(ea_gva).sum(axis=1, keepdims=True)
    ea_wage = np.abs(ea_wage) / np.abs(ea_wage).sum(axis=1, keepdims=True)
    ro_gva = ea_gva + np.outer(1.0 - ecs, GVA_TILT)
    ro_wage = ea_wage + np.outer(1.0 - wsc, WAGE_TILT)
    assert (ro_gva > 0).all() and (ro_wage > 0).all()

    # divergence law of motion ------------------------------------------------
    x = np.column_stack([np.log(ecs), np.log(opn), np.log(wsc), np.log(gcap)])
    b = np.array([BETA["ecs"], BETA["open"], BETA["wsc"], BETA["gcap"]])
    drive = x @ b
    const = -np.mean(drive)
    logd = np.empty(N)
    logd[0] = 0.0
    for i in range(1, N):
        logd[i] = const + BETA["lag"] * logd[i - 1] + drive[i] + rng.normal(0, NOISE_SD)
    d = np.exp(logd)

    g_ea = ea_cycle(t) + rng.normal(0, 0.15, N)
    sign = np.where(t < 32, np.sign(g_ea + 1e-9), np.sign(np.sin(2 * np.pi * t / 9 + 0.5)))
    sign[sign == 0] = 1.0
    g_ro = g_ea + sign * d

    # GDP levels ----------------------------------------------------------------
    ea_trend = 2.15e6 * np.exp(0.0033 * t - 0.00002 * t**2)
    ro_trend = 2.6e4 * np.exp(0.0125 * t - 0.00006 * t**2)
    gdp_ea = ea_trend * (1 + g_ea / 100)
    # the filter pushes part of the designed divergence into the trend; nudge
    # the Romanian input until its filtered gap tracks the design
    g_in = g_ro.copy()
    for _ in range(CORRECTION_ROUNDS):
        gdp_ro = ro_trend * (1 + g_in / 100)
        realized = 100 * (gdp_ro / hp_trend(gdp_ro) - 1)
        target = 100 * (gdp_ea / hp_trend(gdp_ea) - 1) + sign * d
        g_in += target - realized
    gdp_ro = ro_trend * (1 + g_in / 100)

    gdp_nom = 1.15e4 * np.exp(0.025 * t - 0.00015 * t**2) * (1 + g_ro / 100)
    exp_share = 0.52 * opn * (1 + rng.normal(0, 0.01, N))
    imports = (opn - exp_share) * gdp_nom
    exports = exp_share * gdp_nom
    gdpcap_ea = 6.6e3 * np.exp(0.003 * t)
    gdpcap_ro = gcap * gdpcap_ea

    return {
        "gdp_ro": gdp_ro, "gdp_ea": gdp_ea,
        "imports_ro": imports, "exports_ro": exports, "gdp_nominal_ro": gdp_nom,
        "gdpcap_ro": gdpcap_ro, "gdpcap_ea": gdpcap_ea,
        "gva_shares_ro": ro_gva, "gva_shares_ea": ea_gva,
        "wage_shares_ro": ro_wage, "wage_shares_ea": ea_wage,
    }


UNITS = {
    "gdp_ro": "million EUR, chain-linked 2010, SCA",
    "gdp_ea": "million EUR, chain-linked 2010, SCA",
    "imports_ro": "million EUR, current prices, SCA",
    "exports_ro": "million EUR, current prices, SCA",
    "gdp_nominal_ro": "million EUR, current prices, SCA",
    "gdpcap_ro": "EUR per capita, chain-linked 2010",
    "gdpcap_ea": "EUR per capita, chain-linked 2010",
    "gva_shares_ro": "percent of total gross value added",
    "gva_shares_ea": "percent of total gross value added",
    "wage_shares_ro": "percent of total compensation of employees",
    "wage_shares_ea": "percent of total compensation of employees",
}


def write(data: dict[str, object], out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    qs = quarters()
    variables = {}
    for name, arr in data.items():
        path = out / f"{name}.csv"
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            if arr.ndim == 1:
                fh.write(f"date,{name}\n")
                for q, v in zip(qs, arr):
                    fh.write(f"{q},{v:.4f}\n")
            else:
                fh.write("date," + ",".join(SECTORS) + "\n")
                for q, row in zip(qs, arr):
                    fh.write(q + "," + ",".join(f"{100 * v:.4f}" for v in row) + "\n")
        variables[name] = {"path": path.name, "unit": UNITS[name]}
    manifest = {
        "sample": {"start": qs[0], "end": qs[-1]},
        "base_year": "2010",
        "note": f"synthetic fixture data, seed {SEED}; not official statistics",
        "variables": variables,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("src/cyclegap/data/fixtures"))
    ap.add_argument("--seed", type=int, default=SEED)
    args = ap.parse_args()
    write(build(np.random.default_rng(args.seed)), args.out)


if __name__ == "__main__":
    main()
