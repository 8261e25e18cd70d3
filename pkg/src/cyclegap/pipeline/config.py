"""Pipeline configuration, read from JSON."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..hp import DEFAULT_LAMBDA
from ..ols import RegressionSpec
from ..series import Quarter

DEFAULT_SUBPERIODS = (("2002Q1", "2009Q4"), ("2010Q1", "2017Q4"))
REPORT_FORMATS = frozenset({"csv", "md", "svg"})
ADF_DETERMINISTIC = ("none", "constant", "constant+trend", "n", "c", "ct")


class ConfigError(ValueError):
    """The configuration is unusable; maps to the usage exit code."""


def fixtures_dir() -> Path:
    return Path(str(resources.files("cyclegap") / "data" / "fixtures"))


@dataclass(frozen=True)
class PipelineConfig:
    """Settings of one pipeline run.

    Defaults reproduce the reference configuration: smoothing weight 1600,
    the 2002Q1-2009Q4 / 2010Q1-2017Q4 split, the divergence regression and
    two Breusch-Godfrey lags.
    """

    manifest: Path = field(default_factory=lambda: fixtures_dir() / "manifest.json")
    lam: float = DEFAULT_LAMBDA
    subperiods: tuple[tuple[str, str], ...] = DEFAULT_SUBPERIODS
    regression: RegressionSpec = field(default_factory=RegressionSpec.divergence_model)
    bg_lags: int = 2
    output_dir: Path = Path("cyclegap-out")
    report_formats: frozenset[str] = REPORT_FORMATS
    adf_deterministic: str = "constant"
    adf_max_lag: int | None = None
    expected: Path | None = field(default_factory=lambda: fixtures_dir() / "expected.json")
    cache_dir: Path | None = None

    def __post_init__(self) -> None:
        if not self.lam >= 0:
            raise ConfigError(f"lambda must be >= 0, got {self.lam}")
        if self.bg_lags < 1:
            raise ConfigError("bg_lags must be >= 1")
        for a, b in self.subperiods:
            try:
                if Quarter.parse(a) > Quarter.parse(b):
                    raise ConfigError(f"subperiod {a}-{b} is reversed")
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if self.adf_deterministic not in ADF_DETERMINISTIC:
            raise ConfigError(f"adf_deterministic must be one of {list(ADF_DETERMINISTIC)}")
        if self.adf_max_lag is not None and self.adf_max_lag < 0:
            raise ConfigError("adf_max_lag must be >= 0")
        bad = set(self.report_formats) - REPORT_FORMATS
        if bad:
            raise ConfigError(f"unknown report formats {sorted(bad)}")

    @classmethod
    def from_dict(cls, d: dict, base: Path | None = None) -> PipelineConfig:
        allowed = {
            "manifest", "lambda", "subperiods", "regression", "bg_lags", "output_dir",
            "report_formats", "adf_deterministic", "adf_max_lag", "expected", "cache_dir",
        }
        unknown = set(d) - allowed
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        base = base or Path(".")

        def path(key):
            v = d[key]
            if v is None:
                return None
            p = Path(v)
            return p if p.is_absolute() else base / p

        kwargs = {}
        for key in ("manifest", "output_dir", "expected", "cache_dir"):
            if key in d:
                kwargs[key] = path(key)
        if "lambda" in d:
            kwargs["lam"] = float(d["lambda"])
        if "subperiods" in d:
            kwargs["subperiods"] = tuple((str(a), str(b)) for a, b in d["subperiods"])
        if "regression" in d:
            try:
                kwargs["regression"] = RegressionSpec.from_dict(d["regression"])
            except (KeyError, TypeError, ValueError) as exc:
                raise ConfigError(f"bad regression spec: {exc}") from None
        if "bg_lags" in d:
            kwargs["bg_lags"] = int(d["bg_lags"])
        if "report_formats" in d:
            kwargs["report_formats"] = frozenset(d["report_formats"])
        if "adf_deterministic" in d:
            kwargs["adf_deterministic"] = str(d["adf_deterministic"])
        if "adf_max_lag" in d:
            kwargs["adf_max_lag"] = None if d["adf_max_lag"] is None else int(d["adf_max_lag"])
        return cls(**kwargs)

    @classmethod
    def load(cls, path: str | os.PathLike) -> PipelineConfig:
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError(f"{path}: top level must be an object")
        return cls.from_dict(raw, path.parent)
