"""Supervised fine-tuning dataset emission.

Records are emitted as JSONL with a JSON manifest sidecar that carries the
full provenance chain: sampling seed, per-record assignment seeds, and the
event-freedom scan result, so a training regime is reconstructible from
the manifest alone.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
from dataclasses import dataclass

from capt import __version__
from capt.errors import EmitError, EventFreedomViolationError
from capt.items import ANSWERS_BY_DATASET, DATASETS, SPLITS, ReasoningItem
from capt.rng import fold_label, stream
from capt.symbolize import (
    _find_matches,
    apply_assignment,
    assign_letters,
    symbolize_deterministic,
)

CAPT_MODES = ("null", "order", "random")
FORMATS = ("cot", "answer_only")
ANSWER_TOKENS = ("Yes", "No", "True", "False")

COT_COMPLETION = re.compile(
    r"<think> .*</think>\n<answer> (Yes|No|True|False) </answer>\Z", re.DOTALL
)


@dataclass
class SftRecord:
    """One training pair plus the provenance needed to rebuild it."""

    id: str
    prompt: str
    completion: str
    meta: dict

    def to_json(self) -> str:
        return json.dumps(
            {
                "id": self.id,
                "prompt": self.prompt,
                "completion": self.completion,
                "meta": self.meta,
            },
            ensure_ascii=False,
        )


_POOLS: dict[str, tuple[str, ...]] = {}


def _pool_for(dataset: str) -> tuple[str, ...]:
    if dataset not in _POOLS:
        if dataset == "cladder":
            from capt.cladder import pool_surfaces
        elif dataset == "prontoqa":
            from capt.prontoqa import pool_surfaces
        else:
            raise EmitError(f"no event pool for dataset {dataset!r}")
        _POOLS[dataset] = pool_surfaces()
    return _POOLS[dataset]


def scan_event_freedom(records: list[SftRecord]) -> list[str]:
    """Stem-level hits of curated pool surfaces in emitted text.

    Each record is scanned against its own dataset's pool; an empty list
    means the intervention left no event surface behind.
    """
    hits = []
    for record in records:
        pool = [(s, s, None) for s in _pool_for(record.meta["dataset"])]
        for field_name, text in (
            ("prompt", record.prompt),
            ("completion", record.completion),
        ):
            for start, end, surface, _ in _find_matches(text, pool):
                hits.append(
                    f"{record.id}: {field_name}[{start}:{end}] still contains "
                    f"pool event {surface!r}"
                )
    return hits


def _transform(item: ReasoningItem, capt_mode: str, seed: int, copy: int):
    """(prompt, trace, assignment_seed) for one record."""
    if capt_mode == "null":
        return item.prompt, item.gold_cot, None
    transformed = symbolize_deterministic(item)
    assign_seed = fold_label(seed, "assign", item.id, copy)
    assignment = assign_letters(transformed.table, capt_mode, assign_seed)
    finalized = apply_assignment(transformed, assignment)
    recorded_seed = assign_seed if capt_mode == "random" else None
    return finalized.background_question, finalized.reasoning, recorded_seed


def build_records(
    items: list[ReasoningItem],
    format: str,
    capt_mode: str,
    seed: int,
    n_samples: int,
    reassign_per_copy: int = 1,
) -> list[SftRecord]:
    """Subsample, transform, and order the records without touching disk."""
    if format not in FORMATS:
        raise EmitError(f"unknown format {format!r}; expected one of {FORMATS}")
    if capt_mode not in CAPT_MODES:
        raise EmitError(f"unknown capt_mode {capt_mode!r}; expected one of {CAPT_MODES}")
    if reassign_per_copy < 1:
        raise EmitError("reassign_per_copy must be at least 1")
    if n_samples > len(items):
        raise EmitError(
            f"n_samples={n_samples} exceeds the {len(items)} available items"
        )
    ordered = sorted(items, key=lambda item: item.id)
    if len({item.id for item in ordered}) != len(ordered):
        raise EmitError("duplicate item ids in the input pool")
    rng = stream(seed, "emit-sample")
    chosen = rng.sample(ordered, n_samples)
    records = []
    for item in chosen:
        for copy in range(reassign_per_copy):
            prompt, trace, assign_seed = _transform(item, capt_mode, seed, copy)
            completion = trace if format == "cot" else item.gold_answer
            record_id = item.id if reassign_per_copy == 1 else f"{item.id}::r{copy}"
            records.append(
                SftRecord(
                    id=record_id,
                    prompt=prompt,
                    completion=completion,
                    meta={
                        "dataset": item.dataset,
                        "split": item.split,
                        "capt_mode": capt_mode,
                        "assignment_seed": assign_seed,
                    },
                )
            )
    records.sort(key=lambda record: record.id)
    return records


def emit_sft(
    items: list[ReasoningItem],
    path: str,
    format: str,
    capt_mode: str,
    seed: int,
    n_samples: int,
    reassign_per_copy: int = 1,
) -> dict:
    """Write the JSONL file and its manifest sidecar; returns the manifest.

    CAPT-mode output failing the event-freedom scan is a hard failure:
    nothing is written.
    """
    records = build_records(
        items, format, capt_mode, seed, n_samples, reassign_per_copy
    )
    scanned = capt_mode != "null"
    if scanned:
        hits = scan_event_freedom(records)
        if hits:
            preview = "; ".join(hits[:5])
            raise EventFreedomViolationError(
                f"{len(hits)} pool event(s) survived the intervention: {preview}"
            )
    ids = [record.id for record in records]
    manifest = {
        "name": os.path.basename(path),
        "generator": {"name": "capt", "version": __version__},
        "format": format,
        "capt_mode": capt_mode,
        "seed": seed,
        "n_samples": n_samples,
        "reassign_per_copy": reassign_per_copy,
        "records": len(records),
        "ids": ids,
        "ids_sha256": hashlib.sha256("\n".join(ids).encode("utf-8")).hexdigest(),
        "assignment_seeds": {
            record.id: record.meta["assignment_seed"]
            for record in records
            if record.meta["assignment_seed"] is not None
        },
        "event_freedom": {"scanned": scanned, "violations": 0},
    }
    try:
        with open(path, "w", encoding="utf-8") as fh:
            for record in records:
                fh.write(record.to_json() + "\n")
        with open(manifest_path(path), "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, ensure_ascii=False)
            fh.write("\n")
    except OSError as exc:
        raise EmitError(f"cannot write {path}: {exc}") from exc
    return manifest


def manifest_path(path: str) -> str:
    stem, _ = os.path.splitext(path)
    return stem + ".manifest.json"


def _check_record(payload: dict, lineno: int, problems: list[str]) -> str | None:
    """Schema and invariant checks for one parsed line; returns the id."""
    for key, kind in (("id", str), ("prompt", str), ("completion", str), ("meta", dict)):
        if not isinstance(payload.get(key), kind):
            problems.append(f"line {lineno}: missing or mistyped field {key!r}")
            return None
    meta = payload["meta"]
    for key in ("dataset", "split", "capt_mode", "assignment_seed"):
        if key not in meta:
            problems.append(f"line {lineno}: meta lacks {key!r}")
    dataset = meta.get("dataset")
    if dataset not in DATASETS:
        problems.append(f"line {lineno}: unknown dataset {dataset!r}")
    if meta.get("split") not in SPLITS:
        problems.append(f"line {lineno}: unknown split {meta.get('split')!r}")
    if meta.get("capt_mode") not in CAPT_MODES:
        problems.append(f"line {lineno}: unknown capt_mode {meta.get('capt_mode')!r}")
    if not payload["prompt"]:
        problems.append(f"line {lineno}: empty prompt")
    completion = payload["completion"]
    valid_answers = ANSWERS_BY_DATASET.get(dataset, ANSWER_TOKENS)
    if completion.startswith("<think>"):
        match = COT_COMPLETION.fullmatch(completion)
        if match is None:
            problems.append(
                f"line {lineno}: cot completion lacks the "
                "<think>...</think>\\n<answer> ... </answer> shape"
            )
        elif match.group(1) not in valid_answers:
            problems.append(
                f"line {lineno}: answer tag {match.group(1)!r} invalid for {dataset}"
            )
    elif completion not in valid_answers:
        problems.append(
            f"line {lineno}: answer-only completion {completion!r} is not a bare "
            f"answer token for {dataset}"
        )
    return payload["id"]


def validate_sft(path: str) -> list[str]:
    """Violation report for an emitted file; empty means well-formed."""
    problems: list[str] = []
    seen_ids: set[str] = set()
    previous_id: str | None = None
    count = 0
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line:
                    problems.append(f"line {lineno}: blank line")
                    continue
                try:
                    payload = json.loads(line)
                except json.JSONDecodeError as exc:
                    problems.append(f"line {lineno}: not valid JSON ({exc.msg})")
                    continue
                count += 1
                record_id = _check_record(payload, lineno, problems)
                if record_id is None:
                    continue
                if record_id in seen_ids:
                    problems.append(f"line {lineno}: duplicate id {record_id!r}")
                seen_ids.add(record_id)
                if previous_id is not None and record_id < previous_id:
                    problems.append(
                        f"line {lineno}: id {record_id!r} out of order after "
                        f"{previous_id!r}"
                    )
                previous_id = record_id
    except OSError as exc:
        raise EmitError(f"cannot read {path}: {exc}") from exc
    sidecar = manifest_path(path)
    if os.path.exists(sidecar):
        try:
            with open(sidecar, encoding="utf-8") as fh:
                manifest = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            problems.append(f"manifest {sidecar}: unreadable ({exc})")
        else:
            if manifest.get("records") != count:
                problems.append(
                    f"manifest records={manifest.get('records')} but file has {count}"
                )
            digest = hashlib.sha256(
                "\n".join(sorted(seen_ids)).encode("utf-8")
            ).hexdigest()
            if manifest.get("ids_sha256") not in (None, digest):
                problems.append("manifest ids_sha256 does not match file contents")
    return problems
