"""Configurable evolution engine with paradigm presets, CLI, and service."""

from .engine import (
    GenerationStats,
    Individual,
    Population,
    RunConfig,
    RunRecord,
    StopReason,
    initialize,
    run,
    should_stop,
    step,
)
from .errors import EngineError
from .experiment import Experiment, load_experiment
from .model import (
    ElitismMode,
    ElitismSpec,
    EngineConfig,
    ObjectiveSense,
    SizeParam,
    ValidationReport,
    resolve_size,
    resolved_sizes,
    to_wire,
    validate,
)
from .presets import Paradigm, PresetParams, apply_preset, classify
from .problems import Problem, ProblemSpec, make_problem

__all__ = [
    "EngineError",
    "EngineConfig",
    "ElitismMode",
    "ElitismSpec",
    "Experiment",
    "GenerationStats",
    "Individual",
    "ObjectiveSense",
    "Paradigm",
    "Population",
    "PresetParams",
    "Problem",
    "ProblemSpec",
    "RunConfig",
    "RunRecord",
    "SizeParam",
    "StopReason",
    "ValidationReport",
    "apply_preset",
    "classify",
    "initialize",
    "load_experiment",
    "make_problem",
    "resolve_size",
    "resolved_sizes",
    "run",
    "should_stop",
    "step",
    "to_wire",
    "validate",
]
