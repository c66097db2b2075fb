"""Supervised fine-tuning adapter for emitted prompt/completion datasets."""

from .config import (
    ALT_LEARNING_RATE,
    DEFAULT_BASE_MODEL,
    TrainConfig,
    config_from_manifest,
    load_train_config,
)
from .data import CharTokenizer, TrainRecord, load_records
from .errors import (
    ConfigError,
    DatasetError,
    ModelError,
    SftAdapterError,
    TrainError,
)
from .models import base_weights_sha256
from .train import TrainResult, load_checkpoint, train, train_from_manifest

__version__ = "0.1.0"

__all__ = [
    "ALT_LEARNING_RATE",
    "DEFAULT_BASE_MODEL",
    "CharTokenizer",
    "ConfigError",
    "DatasetError",
    "ModelError",
    "SftAdapterError",
    "TrainConfig",
    "TrainError",
    "TrainRecord",
    "TrainResult",
    "base_weights_sha256",
    "config_from_manifest",
    "load_checkpoint",
    "load_records",
    "load_train_config",
    "train",
    "train_from_manifest",
]
