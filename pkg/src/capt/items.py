"""Shared reasoning-item record and JSONL IO."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from capt.errors import ParseError

DATASETS = ("cladder", "prontoqa")
SPLITS = ("commonsense", "antisense", "nonsense")
ANSWERS_BY_DATASET = {
    "cladder": ("Yes", "No"),
    "prontoqa": ("True", "False"),
}


@dataclass(frozen=True)
class EventVariable:
    """An event with its surface name and optional state descriptions."""

    name: str
    set_description: str | None = None
    unset_description: str | None = None

    def surfaces(self) -> tuple[str, ...]:
        out = [self.name]
        if self.set_description:
            out.append(self.set_description)
        if self.unset_description:
            out.append(self.unset_description)
        return tuple(out)


@dataclass
class ReasoningItem:
    """One benchmark question with its gold trace and event inventory."""

    id: str
    dataset: str
    split: str
    prompt: str
    gold_cot: str
    gold_answer: str
    events: list[str] = field(default_factory=list)
    seed_trace: int = 0

    def validate(self) -> None:
        if self.dataset not in DATASETS:
            raise ParseError(f"item {self.id}: unknown dataset {self.dataset!r}")
        if self.split not in SPLITS:
            raise ParseError(f"item {self.id}: unknown split {self.split!r}")
        if self.gold_answer not in ANSWERS_BY_DATASET[self.dataset]:
            raise ParseError(
                f"item {self.id}: answer {self.gold_answer!r} invalid for {self.dataset}"
            )
        if not self.prompt:
            raise ParseError(f"item {self.id}: empty prompt")
        for event in self.events:
            if event not in self.prompt:
                raise ParseError(
                    f"item {self.id}: event {event!r} does not occur in the prompt"
                )


def write_items(path: str, items: list[ReasoningItem]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for item in items:
            fh.write(json.dumps(asdict(item), ensure_ascii=False) + "\n")


def read_items(path: str) -> list[ReasoningItem]:
    items: list[ReasoningItem] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                payload = json.loads(line)
                item = ReasoningItem(**payload)
            except (json.JSONDecodeError, TypeError) as exc:
                raise ParseError(f"{path}:{lineno}: bad item record: {exc}") from exc
            item.validate()
            items.append(item)
    return items
