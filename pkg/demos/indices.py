"""Build the convergence indices from sector shares and trade data.

    python3 demos/indices.py
"""

from __future__ import annotations

from cyclegap import SectorShares, openness, pearson, structure_convergence
from cyclegap.pipeline import PipelineConfig, build_inputs
from cyclegap.pipeline.stages import load_manifest


def main() -> None:
    # two economies with three sectors each, shares given in percent
    a = SectorShares.normalized({"agriculture": 20, "industry": 30, "services": 50})
    b = SectorShares.normalized({"agriculture": 5, "industry": 25, "services": 70})
    print(f"structure convergence, a vs b: {structure_convergence(a, b):.3f}")
    print(f"structure convergence, a vs a: {structure_convergence(a, a):.3f}")
    print(f"openness with imports 45, exports 40, GDP 100: {openness(imports=45, exports=40, gdp=100):.1f}")

    config = PipelineConfig()
    inputs = build_inputs(load_manifest(config))
    frame = inputs.frame
    for name in frame.names():
        s = frame[name]
        print(f"{name:18s} {s.start}..{s.end}  first {s.values[0]:8.4f}  last {s.values[-1]:8.4f}")

    # business-cycle synchronization before and after 2010
    for window in (("2002Q1", "2009Q4"), ("2010Q1", "2017Q4")):
        r = pearson(inputs.gap_ro.gap, inputs.gap_ea.gap, window)
        print(f"output-gap correlation {window[0]}-{window[1]}: {r.coefficient:.4f}")


if __name__ == "__main__":
    main()
