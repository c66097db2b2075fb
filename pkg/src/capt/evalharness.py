"""Endpoint evaluation over the three splits with accuracy + STD reports.

Items are optionally transformed at inference time (same intervention as
training), queried with bounded concurrency, and scored per split; the
report carries the sample standard deviation across the three split
accuracies and every per-item record for replay.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources

from capt.errors import ConfigError, EndpointError, EvalError
from capt.items import ANSWERS_BY_DATASET, SPLITS, ReasoningItem
from capt.llm import ChatClient
from capt.rng import fold_label
from capt.symbolize import apply_assignment, assign_letters, symbolize_deterministic

CAPT_MODES = ("null", "order", "random")
PROMPT_MODES = ("direct", "cot", "cot_ic")

SYSTEM_PROMPTS = {
    "direct": (
        "Answer the question with a single final answer token and nothing else."
    ),
    "cot": (
        "Think through the problem step by step inside <think> </think> tags, "
        "then give the final answer inside <answer> </answer> tags."
    ),
}
SYSTEM_PROMPTS["cot_ic"] = SYSTEM_PROMPTS["cot"]

_ANSWER_TAG = re.compile(r"<answer>(.*?)</answer>", re.IGNORECASE | re.DOTALL)


@dataclass
class EndpointConfig:
    """Where and how to query a chat-completions endpoint."""

    base_url: str
    model_name: str
    api_key_env: str = "CAPT_API_KEY"
    temperature: float = 0.0
    max_in_flight: int = 4
    timeout_ms: int = 30000
    retry_max: int = 2
    prompt_mode: str = "direct"
    in_context_file: str | None = None

    def validate(self) -> None:
        if self.max_in_flight < 1:
            raise ConfigError("max_in_flight must be at least 1")
        if self.retry_max < 0:
            raise ConfigError("retry_max must not be negative")
        if self.prompt_mode not in PROMPT_MODES:
            raise ConfigError(
                f"prompt_mode {self.prompt_mode!r} not one of {PROMPT_MODES}"
            )


@dataclass
class SplitScore:
    split: str
    n_total: int
    n_correct: int
    n_unparsed: int
    accuracy: float  # percent, 2 decimals; unparsed counts as incorrect


@dataclass
class EvalReport:
    scores: list[SplitScore]
    std: float
    config: dict
    records: list[dict] = field(default_factory=list)

    def accuracies(self) -> tuple[float, float, float]:
        return tuple(score.accuracy for score in self.scores)


def sample_std(values) -> float:
    """Sample standard deviation (n-1 denominator), rounded to 2 decimals."""
    data = list(values)
    if len(data) < 2:
        raise EvalError("sample std needs at least two values")
    mean = sum(data) / len(data)
    variance = sum((v - mean) ** 2 for v in data) / (len(data) - 1)
    return round(math.sqrt(variance), 2)


def parse_answer(reply: str, dataset: str) -> str | None:
    """Gold-format tag first, bare-token fallback second, else unparsed."""
    valid = ANSWERS_BY_DATASET[dataset]
    spans = _ANSWER_TAG.findall(reply)
    if spans:
        content = spans[-1].strip().lower()
        for token in valid:
            if content == token.lower():
                return token
    last_token, last_position = None, -1
    for token in valid:
        for match in re.finditer(rf"\b{token}\b", reply, re.IGNORECASE):
            if match.start() > last_position:
                last_position, last_token = match.start(), token
    return last_token


def transform_prompt(item: ReasoningItem, capt_mode: str, seed: int) -> str:
    """The exact prompt text sent for an item under a mode; null is raw."""
    if capt_mode == "null":
        return item.prompt
    if capt_mode not in CAPT_MODES:
        raise EvalError(f"unknown capt_mode {capt_mode!r}")
    transformed = symbolize_deterministic(item)
    assign_seed = fold_label(seed, "eval-assign", item.id)
    assignment = assign_letters(transformed.table, capt_mode, assign_seed)
    return apply_assignment(transformed, assignment).background_question


def _load_ic_turns(path: str) -> list[tuple[str, str]]:
    with open(path, encoding="utf-8") as fh:
        entries = json.load(fh)
    turns = []
    for entry in entries:
        prompt = entry.get("prompt", entry.get("raw_prompt"))
        response = entry.get("response")
        if not isinstance(prompt, str) or not isinstance(response, str):
            raise ConfigError(f"{path}: in-context entries need prompt and response")
        turns.append((prompt, response))
    return turns


def _default_ic_turns(dataset: str) -> list[tuple[str, str]]:
    path = resources.files("capt.data") / "icl" / f"{dataset}.json"
    entries = json.loads(path.read_text(encoding="utf-8"))
    return [(e["raw_prompt"], e["response"]) for e in entries]


def build_messages(
    cfg: EndpointConfig, prompt: str, ic_turns: list[tuple[str, str]]
) -> list[dict[str, str]]:
    messages = [{"role": "system", "content": SYSTEM_PROMPTS[cfg.prompt_mode]}]
    if cfg.prompt_mode == "cot_ic":
        for example_prompt, example_response in ic_turns:
            messages.append({"role": "user", "content": example_prompt})
            messages.append({"role": "assistant", "content": example_response})
    messages.append({"role": "user", "content": prompt})
    return messages


def query_model(
    cfg: EndpointConfig,
    prompt: str,
    ic_turns: list[tuple[str, str]] | None = None,
    client: ChatClient | None = None,
) -> str:
    cfg.validate()
    if client is None:
        client = _client_for(cfg)
    return client.chat(build_messages(cfg, prompt, ic_turns or []))


def _client_for(cfg: EndpointConfig) -> ChatClient:
    return ChatClient(
        cfg.base_url,
        cfg.model_name,
        api_key_env=cfg.api_key_env,
        temperature=cfg.temperature,
        timeout_ms=cfg.timeout_ms,
        retry_max=cfg.retry_max,
    )


def _run_dir(out_dir: str, config_echo: dict, ids: list[str]) -> str:
    digest = hashlib.sha256(
        json.dumps([config_echo, sorted(ids)], sort_keys=True).encode("utf-8")
    ).hexdigest()[:12]
    path = os.path.join(out_dir, f"run-{digest}")
    os.makedirs(path, exist_ok=True)
    return path


def _score(records: list[dict]) -> list[SplitScore]:
    scores = []
    for split in SPLITS:
        split_records = [r for r in records if r["split"] == split]
        n_total = len(split_records)
        n_correct = sum(1 for r in split_records if r["correct"])
        n_unparsed = sum(1 for r in split_records if r["parsed"] is None)
        accuracy = round(100.0 * n_correct / n_total, 2) if n_total else 0.0
        scores.append(SplitScore(split, n_total, n_correct, n_unparsed, accuracy))
    return scores


def evaluate(
    cfg: EndpointConfig,
    items: list[ReasoningItem],
    capt_mode: str,
    seed: int,
    out_dir: str | None = None,
) -> EvalReport:
    """Query every item, score per split, and persist the run.

    An endpoint failure aborts the run but saves the completed records
    first, flagged as partial, before the error propagates.
    """
    cfg.validate()
    if capt_mode not in CAPT_MODES:
        raise EvalError(f"unknown capt_mode {capt_mode!r}")
    covered = {item.split for item in items}
    if covered != set(SPLITS):
        missing = sorted(set(SPLITS) - covered)
        raise EvalError(f"items must cover all three splits; missing {missing}")
    if len({item.id for item in items}) != len(items):
        raise EvalError("duplicate item ids")

    config_echo = {**asdict(cfg), "capt_mode": capt_mode, "seed": seed}
    prompts = {item.id: transform_prompt(item, capt_mode, seed) for item in items}
    ic_cache: dict[str, list[tuple[str, str]]] = {}

    def ic_turns_for(dataset: str) -> list[tuple[str, str]]:
        if cfg.prompt_mode != "cot_ic":
            return []
        if dataset not in ic_cache:
            if cfg.in_context_file:
                ic_cache[dataset] = _load_ic_turns(cfg.in_context_file)
            else:
                ic_cache[dataset] = _default_ic_turns(dataset)
        return ic_cache[dataset]

    client = _client_for(cfg)

    def run_one(item: ReasoningItem) -> dict:
        reply = query_model(cfg, prompts[item.id], ic_turns_for(item.dataset), client)
        parsed = parse_answer(reply, item.dataset)
        return {
            "id": item.id,
            "split": item.split,
            "prompt": prompts[item.id],
            "reply": reply,
            "parsed": parsed,
            "gold": item.gold_answer,
            "correct": parsed == item.gold_answer,
        }

    records: list[dict] = []
    fault: EndpointError | None = None
    with ThreadPoolExecutor(max_workers=cfg.max_in_flight) as pool:
        futures = {item.id: pool.submit(run_one, item) for item in items}
        for item_id in sorted(futures):
            if fault is not None:
                futures[item_id].cancel()
                continue
            try:
                records.append(futures[item_id].result())
            except EndpointError as exc:
                fault = exc
    records.sort(key=lambda record: record["id"])

    if fault is not None:
        if out_dir:
            run_dir = _run_dir(out_dir, config_echo, [r["id"] for r in records])
            partial = {
                "aborted": True,
                "error": str(fault),
                "config": config_echo,
                "records": records,
            }
            with open(os.path.join(run_dir, "report-partial.json"), "w",
                      encoding="utf-8") as fh:
                json.dump(partial, fh, indent=2, ensure_ascii=False)
            raise EndpointError(
                f"{fault} (partial results saved to {run_dir})"
            ) from fault
        raise fault

    scores = _score(records)
    report = EvalReport(
        scores=scores,
        std=sample_std([score.accuracy for score in scores]),
        config=config_echo,
        records=records,
    )
    if out_dir:
        run_dir = _run_dir(out_dir, config_echo, [r["id"] for r in records])
        with open(os.path.join(run_dir, "report.json"), "w", encoding="utf-8") as fh:
            json.dump(asdict(report), fh, indent=2, ensure_ascii=False)
    return report


def run_ablation(
    cfg: EndpointConfig,
    items: list[ReasoningItem],
    modes: list[str],
    seeds: list[int],
    out_dir: str | None = None,
) -> dict[tuple[str, int], EvalReport]:
    """One evaluation per (mode, seed) cell plus CSV summaries."""
    for mode in modes:
        if mode not in CAPT_MODES:
            raise EvalError(f"unknown capt_mode {mode!r} in ablation grid")
    grid: dict[tuple[str, int], EvalReport] = {}
    for mode in modes:
        for seed in seeds:
            grid[(mode, seed)] = evaluate(cfg, items, mode, seed, out_dir=out_dir)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "summary.csv"), "w", newline="",
                  encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["mode", "seed", "split", "accuracy", "std"])
            for (mode, seed), report in grid.items():
                for score in report.scores:
                    writer.writerow(
                        [mode, seed, score.split, f"{score.accuracy:.2f}",
                         f"{report.std:.2f}"]
                    )
        with open(os.path.join(out_dir, "accuracy_by_mode.csv"), "w", newline="",
                  encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["split"] + list(modes))
            for index, split in enumerate(SPLITS):
                row = [split]
                for mode in modes:
                    cells = [
                        grid[(mode, seed)].scores[index].accuracy for seed in seeds
                    ]
                    row.append(f"{sum(cells) / len(cells):.2f}")
                writer.writerow(row)
    return grid
