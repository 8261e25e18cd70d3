"""Estimate the divergence regression on the shipped fixtures.

    python3 demos/regression.py
"""

from __future__ import annotations

from cyclegap import RegressionSpec, Regressor, fit
from cyclegap.pipeline import PipelineConfig, build_inputs
from cyclegap.pipeline.reports import regression_md
from cyclegap.pipeline.stages import load_manifest


def main() -> None:
    config = PipelineConfig()
    inputs = build_inputs(load_manifest(config))

    full = fit(RegressionSpec.divergence_model(), inputs.frame)
    print(regression_md(full))

    # a smaller specification is declared the same way
    spec = RegressionSpec(
        dependent=Regressor("ogdiv", transform="log"),
        regressors=(Regressor("ogdiv", transform="log", lag=1), Regressor("openness", transform="log")),
    )
    small = fit(spec, inputs.frame)
    print(f"two-regressor model: R-squared {small.stats.r_squared:.4f} vs {full.stats.r_squared:.4f}")


if __name__ == "__main__":
    main()
