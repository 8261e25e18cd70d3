"""Augmented Dickey-Fuller tests with lag length chosen by the Schwarz criterion.

    python3 demos/unit_roots.py
"""

from __future__ import annotations

import numpy as np

from cyclegap.diagnostics import adf_test


def main() -> None:
    rng = np.random.default_rng(11)
    e = rng.normal(size=200)
    ar = np.zeros(200)
    for i in range(1, 200):
        ar[i] = 0.5 * ar[i - 1] + e[i]
    series = {"random walk": np.cumsum(e), "AR(0.5)": ar, "trend + noise": 0.2 * np.arange(200) + e}
    for name, y in series.items():
        for det in ("constant", "constant+trend"):
            t = adf_test(y, det)
            aux = t.auxiliary
            verdict = "stationary" if aux["reject"]["5%"] else "unit root not rejected"
            print(f"{name:14s} {det:15s} tau {t.statistic:7.3f}  lag {aux['lag']}  5% cv {aux['critical_values']['5%']:.3f}  {verdict}")


if __name__ == "__main__":
    main()
