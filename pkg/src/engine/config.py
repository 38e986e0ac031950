"""
Run configuration and the experimental condition presets.
"""

import copy
import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from src.acts.artifact import PAYLOAD_CAP
from src.acts.rules import ActRules
from src.beings.genome import MutationConfig
from src.beings.memory import HARD_LIMIT, SOFT_LIMIT
from src.errors import ConfigError, UsageError
from src.minds.prompts import MOTIVATIONS
from src.world.grid import GridConfig


class Preset(str, Enum):
    CORE = "core"
    LONG_HISTORY = "long_history"
    NO_PERSONALITY = "no_personality"
    NO_MOTIVATION = "no_motivation"
    CREATIVE = "creative"
    ARTIFACT_COST = "artifact_cost"
    INERT_ARTIFACTS = "inert_artifacts"
    ABUNDANT = "abundant"


class RunConfig(BaseModel):
    """Everything that determines a run, apart from the policy."""

    preset: Preset = Preset.CORE
    grid: GridConfig = Field(default_factory=GridConfig)
    n_agents: int = Field(20, ge=1)
    initial_energy: float = Field(50, gt=0)
    lifespan: int = Field(100, gt=0)
    max_steps: int = Field(3000, ge=1)
    reproduce_cost: float = Field(50, ge=0)
    artifact_cost: float = Field(0, ge=0)
    history_len: int = Field(1, ge=1)
    motivation: str = "minimal"
    personality: bool = True
    artifacts_interactive: bool = True
    mutation: MutationConfig = Field(default_factory=MutationConfig)
    seed: int = 0
    memory_soft: int = Field(SOFT_LIMIT, gt=0)
    memory_hard: int = Field(HARD_LIMIT, gt=0)
    payload_cap: int = Field(PAYLOAD_CAP, gt=0)
    progress_every: int = Field(100, ge=0)
    decision_workers: int = Field(1, ge=1)
    archive_llm: bool = False

    @field_validator("motivation")
    @classmethod
    def _known_motivation(cls, value: str) -> str:
        if value not in MOTIVATIONS:
            raise ValueError(f"motivation must be one of {MOTIVATIONS}")
        return value

    @model_validator(mode="after")
    def _check_limits(self):
        if self.memory_soft > self.memory_hard:
            raise ValueError("memory_soft must not exceed memory_hard")
        return self

    @property
    def run_id(self) -> str:
        return f"{self.preset.value}-s{self.seed}"

    def act_rules(self) -> ActRules:
        return ActRules(
            reproduce_cost=self.reproduce_cost,
            artifact_cost=self.artifact_cost,
            payload_cap=self.payload_cap,
            artifacts_interactive=self.artifacts_interactive,
            lifespan=self.lifespan,
            mutation=self.mutation,
        )


# Food regimes. These numbers are our own: foragers thrive under ABUNDANT_FOOD
# and a lone forager starves more often than not under the scarce core regime.
SCARCE_FOOD: Dict[str, Any] = {
    "food_mode": "clustered",
    "cluster_count": 3,
    "initial_food": 60,
    "food_spawn_rate": 1.0,
    "food_decay_prob": 0.02,
}

ABUNDANT_FOOD: Dict[str, Any] = {
    "food_mode": "uniform",
    "initial_food": 500,
    "food_spawn_rate": 10.0,
    "food_decay_prob": 0.02,
}

# Overrides applied on top of the core condition.
PRESETS: Dict[str, Dict[str, Any]] = {
    "core": {"grid": SCARCE_FOOD, "history_len": 1, "motivation": "minimal", "personality": True,
             "artifact_cost": 0, "artifacts_interactive": True},
    "long_history": {"history_len": 20},
    "no_personality": {"personality": False},
    "no_motivation": {"motivation": "none"},
    "creative": {"motivation": "creative"},
    "artifact_cost": {"artifact_cost": 10},
    "inert_artifacts": {"artifacts_interactive": False},
    "abundant": {"grid": ABUNDANT_FOOD, "history_len": 20},
}


def merge(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Recursive dict update; nested dicts are merged, everything else replaced."""
    merged = copy.deepcopy(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def preset_values(name: str) -> Dict[str, Any]:
    if name not in PRESETS:
        raise UsageError(f"Unknown preset '{name}'. Known presets: {', '.join(PRESETS)}")
    values = merge(PRESETS["core"], PRESETS[name])
    values["preset"] = name
    return values


def build_config(values: Dict[str, Any]) -> RunConfig:
    try:
        return RunConfig.model_validate(values)
    except ValidationError as e:
        raise ConfigError(f"Invalid run configuration: {e}") from e


def preset(name: str) -> RunConfig:
    """RunConfig for one named experimental condition."""
    return build_config(preset_values(name))


def load_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> RunConfig:
    """
    Resolve a run configuration.

    The preset named in the file (``core`` when absent) is applied first,
    explicit keys in the file override it, and ``overrides`` (usually CLI
    flags) override both.
    """
    values: Dict[str, Any] = {}
    if path is not None:
        try:
            values = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Cannot read config file {path}: {e}") from e
        if not isinstance(values, dict):
            raise ConfigError(f"Config file {path} must contain a JSON object")
    overrides = overrides or {}
    name = overrides.get("preset") or values.get("preset") or Preset.CORE.value
    resolved = merge(merge(preset_values(name), values), overrides)
    resolved["preset"] = name
    return build_config(resolved)
