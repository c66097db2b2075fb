"""Training configuration: documented defaults, TOML loading, manifest reload.

The defaults are the published fine-tuning settings. Any field may be
overridden (the run manifest records exactly which ones were), but the
defaults themselves never move.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .errors import ConfigError

# Documented default; serving-scale training needs a GPU stack and is never
# exercised by tests. The registry in models.py lists what runs here.
DEFAULT_BASE_MODEL = "Qwen/Qwen2.5-3B-Instruct"

# The published settings list two learning rates without mapping them to
# datasets; the smaller is the default and this is the alternative.
ALT_LEARNING_RATE = 3e-4


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters for one supervised fine-tuning run."""

    dataset_path: str
    base_model_name: str = DEFAULT_BASE_MODEL
    adapter_rank: int = 64
    adapter_alpha: int = 128
    adapter_dropout: float = 0.1
    max_steps: int = 3200
    batch_size: int = 4
    warmup_ratio: float = 0.03
    learning_rate: float = 1.5e-4
    weight_decay: float = 0.01
    scheduler: str = "cosine"
    seed: int = 0

    def validate(self) -> None:
        if not self.dataset_path:
            raise ConfigError("dataset_path must not be empty")
        if not self.base_model_name:
            raise ConfigError("base_model_name must not be empty")
        for field in ("adapter_rank", "adapter_alpha", "max_steps", "batch_size"):
            if getattr(self, field) < 1:
                raise ConfigError(f"{field} must be a positive integer")
        if not 0.0 <= self.adapter_dropout < 1.0:
            raise ConfigError("adapter_dropout must be in [0, 1)")
        if not 0.0 <= self.warmup_ratio <= 1.0:
            raise ConfigError("warmup_ratio must be in [0, 1]")
        if self.learning_rate <= 0.0:
            raise ConfigError("learning_rate must be positive")
        if self.weight_decay < 0.0:
            raise ConfigError("weight_decay must not be negative")
        if self.scheduler != "cosine":
            raise ConfigError(f"unknown scheduler {self.scheduler!r}; only 'cosine' is supported")
        if self.seed < 0:
            raise ConfigError("seed must not be negative")

    def overrides(self) -> dict:
        """Fields that differ from the documented defaults."""
        out = {}
        for field in dataclasses.fields(self):
            if field.default is dataclasses.MISSING:
                continue
            value = getattr(self, field.name)
            if value != field.default:
                out[field.name] = value
        return out

    def to_payload(self) -> dict:
        return dataclasses.asdict(self)


_FIELD_TYPES = {field.name: field.type for field in dataclasses.fields(TrainConfig)}
_INT_FIELDS = {"adapter_rank", "adapter_alpha", "max_steps", "batch_size", "seed"}
_FLOAT_FIELDS = {"adapter_dropout", "warmup_ratio", "learning_rate", "weight_decay"}
_STR_FIELDS = {"dataset_path", "base_model_name", "scheduler"}


def _coerce(key: str, value, origin: str):
    if key in _INT_FIELDS:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{origin}: {key} must be an integer, got {value!r}")
        return value
    if key in _FLOAT_FIELDS:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{origin}: {key} must be a number, got {value!r}")
        return float(value)
    if not isinstance(value, str):
        raise ConfigError(f"{origin}: {key} must be a string, got {value!r}")
    return value


def config_from_mapping(mapping: dict, origin: str = "<config>") -> TrainConfig:
    """Build and validate a TrainConfig from flat key-value pairs."""
    unknown = sorted(set(mapping) - set(_FIELD_TYPES))
    if unknown:
        raise ConfigError(f"{origin}: unknown keys {unknown}")
    if "dataset_path" not in mapping:
        raise ConfigError(f"{origin}: dataset_path is required")
    kwargs = {key: _coerce(key, value, origin) for key, value in mapping.items()}
    cfg = TrainConfig(**kwargs)
    cfg.validate()
    return cfg


def load_train_config(path: str | Path) -> TrainConfig:
    """Read a flat TOML file of TrainConfig keys."""
    path = Path(path)
    try:
        raw = tomllib.loads(path.read_text())
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    except tomllib.TOMLDecodeError as err:
        raise ConfigError(f"{path}: {err}") from err
    for key, value in raw.items():
        if isinstance(value, dict):
            raise ConfigError(f"{path}: sections are not used here; put {key!r} keys at top level")
    return config_from_mapping(raw, origin=str(path))


def config_from_manifest(path: str | Path) -> TrainConfig:
    """Reload the exact configuration a finished run recorded."""
    path = Path(path)
    try:
        manifest = json.loads(path.read_text())
    except OSError as err:
        raise ConfigError(f"cannot read manifest {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise ConfigError(f"{path}: not valid JSON: {err}") from err
    if not isinstance(manifest, dict) or "config" not in manifest:
        raise ConfigError(f"{path}: missing 'config' block")
    config = manifest["config"]
    if not isinstance(config, dict):
        raise ConfigError(f"{path}: 'config' must be an object")
    return config_from_mapping(config, origin=str(path))
