"""Input contract: emitted prompt/completion JSONL plus its manifest sidecar.

This file format is the adapter's only coupling to the dataset tooling. Each
line is one JSON object with exactly the keys id/prompt/completion/meta, ids
are unique and sorted, and the optional ``<name>.manifest.json`` sidecar must
agree on record count and id digest.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from pathlib import Path

from .errors import DatasetError

REQUIRED_KEYS = ("id", "prompt", "completion", "meta")

PAD, BOS, EOS, UNK = 0, 1, 2, 3
SPECIALS = ("<pad>", "<bos>", "<eos>", "<unk>")


@dataclass(frozen=True)
class TrainRecord:
    """One supervised pair; meta is carried but never interpreted."""

    id: str
    prompt: str
    completion: str
    meta: dict


def sidecar_path(dataset_path: str | Path) -> Path:
    path = Path(dataset_path)
    return path.with_name(path.stem + ".manifest.json")


def _check_sidecar(path: Path, ids: list[str]) -> None:
    sidecar = sidecar_path(path)
    if not sidecar.exists():
        return
    try:
        manifest = json.loads(sidecar.read_text())
    except (OSError, json.JSONDecodeError) as err:
        raise DatasetError(f"{sidecar}: unreadable manifest sidecar: {err}") from err
    records = manifest.get("records")
    if records is not None and records != len(ids):
        raise DatasetError(
            f"{sidecar}: manifest records={records} but file has {len(ids)}"
        )
    digest = manifest.get("ids_sha256")
    if digest is not None:
        actual = hashlib.sha256("\n".join(sorted(ids)).encode()).hexdigest()
        if digest != actual:
            raise DatasetError(f"{sidecar}: ids_sha256 does not match the file")


def load_records(dataset_path: str | Path) -> list[TrainRecord]:
    """Parse and fully validate the training file before any training."""
    path = Path(dataset_path)
    try:
        text = path.read_text()
    except OSError as err:
        raise DatasetError(f"cannot read dataset {path}: {err}") from err

    records: list[TrainRecord] = []
    seen: set[str] = set()
    previous_id = ""
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            raise DatasetError(f"{path}:{lineno}: blank line")
        try:
            row = json.loads(line)
        except json.JSONDecodeError as err:
            raise DatasetError(f"{path}:{lineno}: not valid JSON: {err}") from err
        if not isinstance(row, dict) or sorted(row) != sorted(REQUIRED_KEYS):
            raise DatasetError(
                f"{path}:{lineno}: expected exactly the keys {list(REQUIRED_KEYS)}"
            )
        if not isinstance(row["id"], str) or not row["id"]:
            raise DatasetError(f"{path}:{lineno}: id must be a non-empty string")
        for field in ("prompt", "completion"):
            if not isinstance(row[field], str) or not row[field]:
                raise DatasetError(f"{path}:{lineno}: {field} must be a non-empty string")
        if not isinstance(row["meta"], dict):
            raise DatasetError(f"{path}:{lineno}: meta must be an object")
        if row["id"] in seen:
            raise DatasetError(f"{path}:{lineno}: duplicate id {row['id']!r}")
        if row["id"] < previous_id:
            raise DatasetError(f"{path}:{lineno}: ids are not sorted ({row['id']!r})")
        seen.add(row["id"])
        previous_id = row["id"]
        records.append(TrainRecord(row["id"], row["prompt"], row["completion"], row["meta"]))

    if not records:
        raise DatasetError(f"{path}: no records")
    _check_sidecar(path, [record.id for record in records])
    return records


def dataset_sha256(dataset_path: str | Path) -> str:
    return hashlib.sha256(Path(dataset_path).read_bytes()).hexdigest()


class CharTokenizer:
    """Character vocabulary drawn from the dataset; stable across runs."""

    def __init__(self, chars: list[str]):
        self.chars = list(chars)
        self._index = {char: UNK + 1 + k for k, char in enumerate(self.chars)}

    @classmethod
    def from_records(cls, records: list[TrainRecord]) -> "CharTokenizer":
        chars = {char for record in records for char in record.prompt + record.completion}
        return cls(sorted(chars))

    @property
    def vocab_size(self) -> int:
        return UNK + 1 + len(self.chars)

    def encode(self, prompt: str, completion: str) -> tuple[list[int], int]:
        """Token ids plus the index where supervision starts.

        The prompt span is context only; loss applies from the first
        completion token through the end-of-sequence marker.
        """
        ids = [BOS]
        ids += [self._index.get(char, UNK) for char in prompt]
        completion_start = len(ids)
        ids += [self._index.get(char, UNK) for char in completion]
        ids.append(EOS)
        return ids, completion_start

    def to_payload(self) -> dict:
        return {"specials": list(SPECIALS), "chars": self.chars}

    @classmethod
    def from_payload(cls, payload: dict) -> "CharTokenizer":
        if payload.get("specials") != list(SPECIALS):
            raise DatasetError("tokenizer payload has unexpected specials")
        return cls(list(payload["chars"]))


def batch_order(n_records: int, batch_size: int, max_steps: int, seed: int) -> list[list[int]]:
    """Record indices for every step: epoch-shuffled, cycled to max_steps."""
    batches: list[list[int]] = []
    epoch = 0
    pending: list[int] = []
    while len(batches) < max_steps:
        if len(pending) < batch_size:
            order = list(range(n_records))
            random.Random(seed * 100003 + epoch).shuffle(order)
            pending += order
            epoch += 1
            continue
        batches.append(pending[:batch_size])
        pending = pending[batch_size:]
    return batches
