"""Orchestration, reports and the command line front end."""

from .config import ConfigError, PipelineConfig
from .model import MODEL_VARIABLES, ModelInputs, build_inputs
from .stages import Check, StageOutput, evaluate, run_all

__all__ = [
    "MODEL_VARIABLES",
    "Check",
    "ConfigError",
    "ModelInputs",
    "PipelineConfig",
    "StageOutput",
    "build_inputs",
    "evaluate",
    "run_all",
]
