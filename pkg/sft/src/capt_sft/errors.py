"""Exception hierarchy for the training adapter."""

from __future__ import annotations


class SftAdapterError(Exception):
    """Base class for all adapter errors."""


class ConfigError(SftAdapterError):
    """Bad CLI, config-file, or manifest input."""


class DatasetError(SftAdapterError):
    """The training JSONL violates the record contract."""


class ModelError(SftAdapterError):
    """The requested base model cannot be built here."""


class TrainError(SftAdapterError):
    """Training could not run or violated a run invariant."""
