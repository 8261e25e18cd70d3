"""Split a quarterly GDP series into trend and cycle and read off the output gap.

    python3 demos/hp_filter.py
"""

from __future__ import annotations

import numpy as np

from cyclegap import QuarterlySeries, hp_decompose, output_gap
from cyclegap.pipeline.config import fixtures_dir
from cyclegap.ingest import DatasetManifest


def main() -> None:
    # a toy series: exponential growth with a cycle of about three years
    t = np.arange(40)
    gdp = QuarterlySeries("2010Q1", 1000 * np.exp(0.008 * t) * (1 + 0.015 * np.sin(2 * np.pi * t / 12)))
    tc = hp_decompose(gdp)
    print("quarter   actual     trend      cycle")
    for q, a, tr, c in list(zip(gdp.quarters(), gdp.values, tc.trend.values, tc.cycle.values))[:6]:
        print(f"{q}  {a:9.2f}  {tr:9.2f}  {c:8.3f}")

    # the smoothing weight controls how much of the cycle the trend absorbs
    for lam in (0, 100, 1600, 1e6):
        gap = output_gap(gdp, lam).gap
        print(f"lambda={lam:>9g}: largest gap {np.abs(gap.values).max():.3f}% of potential")

    # the shipped fixtures: Romanian and euro-area output gaps
    manifest = DatasetManifest.load(fixtures_dir() / "manifest.json")
    for name in ("gdp_ro", "gdp_ea"):
        gap = output_gap(manifest.load_series(name)).gap
        trough = gap.quarters()[int(np.argmin(gap.values))]
        print(f"{name}: deepest gap {gap.values.min():.2f}% in {trough}")


if __name__ == "__main__":
    main()
