"""Model-backed event estimation with verify-and-retry.

A chat model reads an item's prompt and gold trace, proposes the event
variables, and rewrites both texts with placeholders. Every proposal is
checked by verify_symbolization; failures are fed back to the model until
it produces a clean transform or the retry budget runs out.
"""

from __future__ import annotations

import json
from importlib import resources

from capt.errors import ExtractionFailedError, ParseError
from capt.items import EventVariable, ReasoningItem
from capt.llm import ChatClient
from capt.symbolize import SymbolTable, TransformedExample, verify_symbolization

SYSTEM_PROMPT = (
    "You are an anonymizer. Your task is to extract the abstraction of "
    "provided descriptions."
)

USER_TEMPLATE = """Your task is to extract the abstraction of the following background+question paragraph and reasoning steps:

background+question: "{prompt}"

Reasoning steps: "{response}"

{requirements}"""

CLADDER_REQUIREMENTS = """Transform events/entities into variable symbols, denoted in order as {symbol_1}, {symbol_2}, {symbol_3}, etc; where events exist to be 1, non-exist to be 0, like {symbol_1}=1, or {symbol_1}=0.
Outputs the following information:
1. Variable notations:
- the variable symbol, e.g., {symbol_1}.
- the original name of the symbol, e.g., sister.
- the description if the variable is true ({symbol_1}=1), e.g., have a sister.
- the description if the variable is false ({symbol_1}=0), e.g., does not have a sister.
2. Transformed background and question, just replace events/entities with variables.
3. Transformed reasoning steps, ignoring the original symbol assignments and replacing them with the new symbols."""

PRONTOQA_REQUIREMENTS = """Transform all entities and adjectives into variable symbols, denoted in order as {symbol_1}, {symbol_2}, {symbol_3}, etc. Each symbol represents one thing, like an object, an attribute, an adj. etc. Do not include "not" in the symbol name, e.g., "not small" should be transformed to "not {symbol_1}". Also, do not include determiners like "all", "each", "every" and linking verbs like "be", "is", "are" in the symbol names.
Outputs the following information:
1. Variable notations:
- the variable symbol, e.g., {symbol_1}.
- the original name of the symbol, e.g., small/butterfly/segmented/six-legged.
2. Transformed background and question, just replace all entities and adjectives with variables.
3. Transformed reasoning steps with the new symbols."""

REQUIREMENTS = {
    "cladder": CLADDER_REQUIREMENTS,
    "prontoqa": PRONTOQA_REQUIREMENTS,
}


def icl_examples(dataset: str) -> list[dict]:
    """The shipped in-context examples for a dataset."""
    if dataset not in REQUIREMENTS:
        raise ParseError(f"no in-context examples for dataset {dataset!r}")
    path = resources.files("capt.data") / "icl" / f"{dataset}.json"
    return json.loads(path.read_text(encoding="utf-8"))


def _render_user(prompt: str, response: str, requirements: str) -> str:
    return USER_TEMPLATE.format(
        prompt=prompt, response=response, requirements=requirements
    )


def _example_reply(example: dict) -> str:
    return json.dumps(
        {
            "variable2name": example["variable2name"],
            "background_question": example["background_question"],
            "reasoning": example["reasoning"],
        },
        indent=2,
        ensure_ascii=False,
    )


def conversation_for(item: ReasoningItem) -> list[dict[str, str]]:
    """System, in-context pairs, then the real query."""
    requirements = REQUIREMENTS.get(item.dataset)
    if requirements is None:
        raise ParseError(f"no estimation template for dataset {item.dataset!r}")
    messages = [{"role": "system", "content": SYSTEM_PROMPT}]
    for example in icl_examples(item.dataset):
        messages.append(
            {
                "role": "user",
                "content": _render_user(
                    example["raw_prompt"], example["response"], requirements
                ),
            }
        )
        messages.append({"role": "assistant", "content": _example_reply(example)})
    messages.append(
        {
            "role": "user",
            "content": _render_user(item.prompt, item.gold_cot, requirements),
        }
    )
    return messages


def _strip_fences(text: str) -> str:
    stripped = text.strip()
    if stripped.startswith("```"):
        first_newline = stripped.index("\n")
        stripped = stripped[first_newline + 1 :]
        if stripped.endswith("```"):
            stripped = stripped[:-3]
    return stripped.strip()


def _normalize_variables(raw) -> list[dict]:
    """Accept both the list form and the name-keyed dict form."""
    if isinstance(raw, list):
        entries = list(raw)
    elif isinstance(raw, dict):
        entries = []
        for key, value in raw.items():
            entry = dict(value)
            entry.setdefault("name", key)
            entries.append(entry)
    else:
        raise ParseError("variable2name must be a list or an object")

    def index_of(entry: dict) -> int:
        variable = entry.get("variable", "")
        digits = "".join(ch for ch in variable if ch.isdigit())
        if not digits:
            raise ParseError(f"bad variable field {variable!r}")
        return int(digits)

    entries.sort(key=index_of)
    for entry in entries:
        entry["variable"] = "{symbol_%d}" % index_of(entry)
    return entries


def parse_estimator_reply(text: str) -> TransformedExample | None:
    """Fields of a model reply, or None when the JSON itself is unusable."""
    try:
        payload = json.loads(_strip_fences(text))
        entries = _normalize_variables(payload["variable2name"])
        background = payload["background_question"]
        reasoning = payload["reasoning"]
        table = SymbolTable(
            tuple(
                (
                    entry["variable"],
                    EventVariable(
                        entry["name"],
                        entry.get("set_description"),
                        entry.get("unset_description"),
                    ),
                )
                for entry in entries
            )
        )
    except (ParseError, ValueError, KeyError, TypeError):
        return None
    if not isinstance(background, str) or not isinstance(reasoning, str):
        return None
    return TransformedExample(
        item_id="",
        dataset="",
        split="",
        background_question=background,
        reasoning=reasoning,
        answer="",
        table=table,
        prompt_journal=(),
        cot_journal=(),
    )


def estimate_events(
    item: ReasoningItem, client: ChatClient, max_retries: int = 3
) -> TransformedExample:
    """Ask the model for a transform and verify it, retrying with feedback.

    The returned example carries no journals: byte-exact inversion is only
    available from the deterministic route.
    """
    from dataclasses import replace

    messages = conversation_for(item)
    attempts = 0
    while True:
        attempts += 1
        reply = client.chat(messages)
        parsed = parse_estimator_reply(reply)
        if parsed is None:
            problems = ["reply was not the requested JSON object"]
        else:
            parsed = replace(
                parsed,
                item_id=item.id,
                dataset=item.dataset,
                split=item.split,
                answer=item.gold_answer,
            )
            problems = verify_symbolization(parsed, item)
            if not problems:
                return parsed
        if attempts > max_retries:
            raise ExtractionFailedError(
                f"item {item.id}: estimation failed after {attempts} attempts; "
                f"last problems: {problems}",
                retry_count=attempts,
            )
        feedback = "\n".join(f"- {p}" for p in problems)
        messages.append({"role": "assistant", "content": reply})
        messages.append(
            {
                "role": "user",
                "content": (
                    "The previous transformation failed verification:\n"
                    f"{feedback}\n"
                    "Fix these problems and output the full JSON object again."
                ),
            }
        )
