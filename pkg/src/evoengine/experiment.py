"""Experiment documents: engine + run + problem in one JSON file."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .engine import RunConfig
from .model import EngineConfig, WireModel
from .problems import ProblemSpec


class Experiment(WireModel):
    engine: EngineConfig
    run: RunConfig
    problem: ProblemSpec


def read_json(path: Union[str, Path]) -> object:
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def load_experiment(path: Union[str, Path]) -> Experiment:
    return Experiment.model_validate(read_json(path))


def load_engine_config(path: Union[str, Path]) -> EngineConfig:
    """Read a bare engine config, or the engine part of an experiment."""
    data = read_json(path)
    if isinstance(data, dict) and "engine" in data:
        return Experiment.model_validate(data).engine
    return EngineConfig.model_validate(data)
