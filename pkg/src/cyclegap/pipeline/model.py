"""Assemble the divergence-model variables from a dataset manifest."""

from __future__ import annotations

import os
from dataclasses import dataclass

from ..convergence import (
    gdp_capita_convergence_series,
    openness_series,
    structure_convergence_series,
)
from ..hp import DEFAULT_LAMBDA, OutputGapSeries, og_divergence, output_gap
from ..ingest import DatasetManifest
from ..series import QuarterlySeries, SeriesFrame, align, window

MODEL_VARIABLES = ("ogdiv", "ecstructureconv", "openness", "wagestructureconv", "realgdpcapconv")


@dataclass(frozen=True)
class ModelInputs:
    """Every derived series of one pipeline run."""

    gdp_ro: QuarterlySeries
    gdp_ea: QuarterlySeries
    gap_ro: OutputGapSeries
    gap_ea: OutputGapSeries
    frame: SeriesFrame
    lam: float
    approximate_sa: tuple[str, ...] = ()

    @property
    def ogdiv(self) -> QuarterlySeries:
        return self.frame["ogdiv"]


def _sample(s: QuarterlySeries, manifest: DatasetManifest) -> QuarterlySeries:
    lo = max(s.start, manifest.sample_start)
    hi = min(s.end, manifest.sample_end)
    return window(s, lo, hi)


def load_gdp(manifest: DatasetManifest, cache_dir: str | os.PathLike | None = None):
    ro = _sample(manifest.load_series("gdp_ro", cache_dir), manifest)
    ea = _sample(manifest.load_series("gdp_ea", cache_dir), manifest)
    return ro, ea


def build_gaps(manifest: DatasetManifest, lam: float = DEFAULT_LAMBDA, cache_dir=None):
    ro, ea = load_gdp(manifest, cache_dir)
    return ro, ea, output_gap(ro, lam), output_gap(ea, lam)


def build_inputs(
    manifest: DatasetManifest, lam: float = DEFAULT_LAMBDA, cache_dir: str | os.PathLike | None = None
) -> ModelInputs:
    """Output gaps, their divergence and the four drivers on one aligned range."""
    ro, ea, gap_ro, gap_ea = build_gaps(manifest, lam, cache_dir)
    ogdiv = og_divergence(gap_ro, gap_ea)

    def panel(name):
        return manifest.load_panel(name, cache_dir).shares

    ecs = structure_convergence_series(panel("gva_shares_ro"), panel("gva_shares_ea"))
    wsc = structure_convergence_series(panel("wage_shares_ro"), panel("wage_shares_ea"))
    opn = openness_series(
        manifest.load_series("imports_ro", cache_dir),
        manifest.load_series("exports_ro", cache_dir),
        manifest.load_series("gdp_nominal_ro", cache_dir),
    )
    gcap = gdp_capita_convergence_series(
        manifest.load_series("gdpcap_ro", cache_dir), manifest.load_series("gdpcap_ea", cache_dir)
    )
    frame = align(
        ogdiv=ogdiv,
        ecstructureconv=_sample(ecs, manifest),
        openness=_sample(opn, manifest),
        wagestructureconv=_sample(wsc, manifest),
        realgdpcapconv=_sample(gcap, manifest),
    )
    return ModelInputs(ro, ea, gap_ro, gap_ea, frame, float(lam), tuple(manifest.approximate_sa()))
