"""Event intervention: replace event surfaces with abstract placeholders.

The deterministic route scans an item's prompt and gold trace for event
surfaces (variable names and state descriptions), replaces them with
numbered placeholders ({symbol_1}, {symbol_2}, ...), and journals every
replacement so the original bytes can always be restored. Placeholders are
then assigned capital-letter codes, either in order or shuffled per seed.

Matching is stem-level: the first character is case-insensitive, the rest
exact, match boundaries must not split a word, and a trailing plural "s"
stays behind as literal text outside the placeholder. Longer surfaces win
over shorter ones starting at the same point, and earlier matches win over
overlapping later ones.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from capt.errors import EventNotFoundError, ParseError, SymbolizationError
from capt.items import EventVariable, ReasoningItem
from capt.rng import SplitMix64

PLACEHOLDER = re.compile(r"\{symbol_([1-9][0-9]*)\}")
# Anything brace-and-symbol-like; verify rejects spans that are not
# well-formed placeholders. A literal brace may legitimately precede a
# placeholder (subscript notation), so only single-brace spans are scanned.
MALFORMED = re.compile(r"\{\s*symbol[^{}]*\}?", re.IGNORECASE)

TRACE_OPEN = "<think> "


@dataclass(frozen=True)
class Op:
    """One journaled replacement, anchored in the transformed text."""

    offset: int  # where the replacement text starts in the transformed text
    text: str  # the replacement as written (placeholder or letter code)
    original: str  # the exact source span that was replaced
    placeholder: str  # the {symbol_k} this op belongs to
    state: str | None  # None for a name, "1"/"0" for set/unset descriptions


@dataclass(frozen=True)
class SymbolTable:
    """Placeholders paired with their variables, in numbering order."""

    entries: tuple[tuple[str, EventVariable], ...]

    def placeholders(self) -> tuple[str, ...]:
        return tuple(p for p, _ in self.entries)

    def variables(self) -> tuple[EventVariable, ...]:
        return tuple(v for _, v in self.entries)

    def to_payload(self) -> list[dict]:
        return [
            {
                "variable": placeholder,
                "name": var.name,
                "set_description": var.set_description,
                "unset_description": var.unset_description,
            }
            for placeholder, var in self.entries
        ]


@dataclass(frozen=True)
class TransformedExample:
    """A symbolized item plus everything needed to restore the original."""

    item_id: str
    dataset: str
    split: str
    background_question: str
    reasoning: str
    answer: str
    table: SymbolTable
    prompt_journal: tuple[Op, ...]
    cot_journal: tuple[Op, ...]
    cot_prefix: str = ""


@dataclass(frozen=True)
class Assignment:
    """Letter codes for each placeholder."""

    mode: str
    seed: int
    pairs: tuple[tuple[str, str], ...]

    def mapping(self) -> dict[str, str]:
        return dict(self.pairs)


@dataclass(frozen=True)
class FinalizedExample:
    """A transformed example with letter codes substituted in."""

    item_id: str
    dataset: str
    split: str
    background_question: str
    reasoning: str
    answer: str
    table: SymbolTable
    assignment: Assignment
    prompt_journal: tuple[Op, ...]
    cot_journal: tuple[Op, ...]
    cot_prefix: str = ""


# === matching ===


def _is_boundary_before(text: str, index: int) -> bool:
    # Underscore is not a boundary on this side, so a digit-named event ("7")
    # never matches the numbering digits inside a placeholder ("{symbol_7}").
    if index == 0:
        return True
    prev = text[index - 1]
    return not (prev.isalnum() or prev == "_")


def _is_boundary_after(text: str, index: int) -> bool:
    """index points just past the match; a plural s may trail it.

    Underscore stays a boundary here: subscript notation like "Y_{X=0}"
    must still expose the "Y".
    """
    if index >= len(text) or not text[index].isalnum():
        return True
    if text[index] == "s":
        return index + 1 >= len(text) or not text[index + 1].isalnum()
    return False


def _find_matches(text: str, surfaces: list[tuple[str, str, str | None]]):
    """All boundary-respecting occurrences of every surface.

    surfaces: (surface text, placeholder, state). Returns a non-overlapping
    selection, earliest first, longest first among equal starts.
    """
    candidates = []
    for surface, placeholder, state in surfaces:
        if not surface:
            continue
        first = surface[0]
        rest = surface[1:]
        for index, char in enumerate(text):
            if char.lower() != first.lower():
                continue
            end = index + len(surface)
            if text[index + 1 : end] != rest:
                continue
            if not _is_boundary_before(text, index):
                continue
            if not _is_boundary_after(text, end):
                continue
            candidates.append((index, -len(surface), surface, placeholder, state))
    candidates.sort()
    picked = []
    cursor = 0
    for index, neg_len, surface, placeholder, state in candidates:
        if index < cursor:
            continue
        picked.append((index, index - neg_len, placeholder, state))
        cursor = index - neg_len
    return picked


def _surfaces_of(variables: list[EventVariable]) -> list[tuple[str, int, str | None]]:
    out = []
    for k, var in enumerate(variables):
        out.append((var.name, k, None))
        if var.set_description:
            out.append((var.set_description, k, "1"))
        if var.unset_description:
            out.append((var.unset_description, k, "0"))
    return out


def _substitute(text: str, matches, label_of) -> tuple[str, tuple[Op, ...]]:
    pieces = []
    ops = []
    cursor = 0
    length = 0
    for start, end, key, state in matches:
        gap = text[cursor:start]
        pieces.append(gap)
        length += len(gap)
        placeholder = label_of(key)
        written = placeholder if state is None else f"{placeholder}={state}"
        pieces.append(written)
        ops.append(Op(length, written, text[start:end], placeholder, state))
        length += len(written)
        cursor = end
    pieces.append(text[cursor:])
    return "".join(pieces), tuple(ops)


# === deterministic transform ===


def _variables_for(item: ReasoningItem) -> list[EventVariable]:
    try:
        if item.dataset == "cladder":
            from capt.cladder import variables_for_item

            return variables_for_item(item)
        if item.dataset == "prontoqa":
            from capt.prontoqa import variables_for_item

            return variables_for_item(item)
    except ParseError:
        pass
    return [EventVariable(name) for name in item.events]


def _split_trace_preamble(cot: str) -> tuple[str, str]:
    """Peel off a name-binding preamble like '<think> Let X = ...;'."""
    if not cot.startswith(TRACE_OPEN + "Let "):
        return "", cot
    cut = cot.index("\n\n") + 2
    return cot[len(TRACE_OPEN) : cut], TRACE_OPEN + cot[cut:]


_NOTATION = re.compile(r"Let (\S+) = (.+?)\.$")


def _notation_bindings(prefix: str, variables: list[EventVariable]) -> list[tuple[str, int, None]]:
    """Map trace notation (X, V2, Y) to variable slots via the preamble."""
    if not prefix:
        return []
    name_to_slot = {var.name: k for k, var in enumerate(variables)}
    bindings = []
    for part in prefix.strip().rstrip(".").split("; "):
        left, _, right = part.removeprefix("Let ").partition(" = ")
        slot = name_to_slot.get(right)
        if slot is not None:
            bindings.append((left, slot, None))
    return bindings


def symbolize_deterministic(
    item: ReasoningItem, variables: list[EventVariable] | None = None
) -> TransformedExample:
    """Replace every event surface in the item with numbered placeholders.

    Numbering follows first occurrence in the prompt. Raises
    EventNotFoundError if a variable never appears there.
    """
    if variables is None:
        variables = _variables_for(item)
    if not variables:
        raise SymbolizationError(f"item {item.id} has no event variables")
    for text, where in ((item.prompt, "prompt"), (item.gold_cot, "gold trace")):
        if MALFORMED.search(text):
            raise SymbolizationError(
                f"item {item.id} already contains placeholder-like text in its {where}"
            )

    surfaces = _surfaces_of(variables)
    prompt_matches = _find_matches(item.prompt, surfaces)
    first_seen: dict[int, int] = {}
    for start, _, slot, _ in prompt_matches:
        first_seen.setdefault(slot, start)
    missing = [v.name for k, v in enumerate(variables) if k not in first_seen]
    if missing:
        raise EventNotFoundError(
            f"item {item.id}: no occurrence of {missing} in the prompt"
        )
    order = sorted(first_seen, key=first_seen.get)
    number_of = {slot: rank + 1 for rank, slot in enumerate(order)}
    label_of = lambda slot: f"{{symbol_{number_of[slot]}}}"

    background, prompt_journal = _substitute(item.prompt, prompt_matches, label_of)

    prefix, working_cot = _split_trace_preamble(item.gold_cot)
    cot_surfaces = surfaces + _notation_bindings(prefix, variables)
    cot_matches = _find_matches(working_cot, cot_surfaces)
    reasoning, cot_journal = _substitute(working_cot, cot_matches, label_of)

    table = SymbolTable(
        tuple((label_of(slot), variables[slot]) for slot in order)
    )
    transformed = TransformedExample(
        item_id=item.id,
        dataset=item.dataset,
        split=item.split,
        background_question=background,
        reasoning=reasoning,
        answer=item.gold_answer,
        table=table,
        prompt_journal=prompt_journal,
        cot_journal=cot_journal,
        cot_prefix=prefix,
    )
    problems = verify_symbolization(transformed, item)
    if problems:
        raise SymbolizationError(
            f"item {item.id}: deterministic transform failed checks: {problems}"
        )
    return transformed


# === verification ===


def verify_symbolization(
    transformed: TransformedExample, original: ReasoningItem
) -> list[str]:
    """Check a transform for leaks and malformed or unused placeholders.

    Returns human-readable problem strings; an empty list means the
    transform is clean.
    """
    problems = []
    bg = transformed.background_question
    reasoning = transformed.reasoning

    # 1) no event surface may survive anywhere in the transformed texts
    surfaces = list(_surfaces_of(list(transformed.table.variables())))
    surfaces += [(event, -1, None) for event in original.events]
    for text, where in ((bg, "background_question"), (reasoning, "reasoning")):
        leaked = {text[s:e] for s, e, _, _ in _find_matches(text, surfaces)}
        for span in sorted(leaked):
            problems.append(f"residual event {span!r} in {where}")

    # 2) placeholder syntax: every brace-symbol-like span must be well formed
    for text, where in ((bg, "background_question"), (reasoning, "reasoning")):
        for match in MALFORMED.finditer(text):
            if not PLACEHOLDER.fullmatch(match.group(0)):
                problems.append(f"malformed placeholder {match.group(0)!r} in {where}")

    # 3) declared numbering must be 1..K with no gaps or duplicates
    declared = transformed.table.placeholders()
    wanted = tuple(f"{{symbol_{k}}}" for k in range(1, len(declared) + 1))
    if declared != wanted:
        problems.append(f"table numbering {declared} is not contiguous from 1")

    # 4) declared and used placeholder sets must agree
    used = {m.group(0) for m in PLACEHOLDER.finditer(bg)}
    used |= {m.group(0) for m in PLACEHOLDER.finditer(reasoning)}
    for placeholder in declared:
        if placeholder not in used:
            problems.append(f"declared {placeholder} never used")
    for placeholder in sorted(used - set(declared)):
        problems.append(f"used {placeholder} never declared")

    return problems


# === letter assignment ===


def _letter_codes(count: int) -> list[str]:
    alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    codes = list(alphabet)
    prefix = 0
    while len(codes) < count:
        codes.extend(alphabet[prefix] + c for c in alphabet)
        prefix += 1
    return codes[:count]


def assign_letters(table: SymbolTable, mode: str, seed: int = 0) -> Assignment:
    """Capital-letter codes for each placeholder, ordered or seed-shuffled."""
    placeholders = table.placeholders()
    count = len(placeholders)
    if mode == "order":
        codes = _letter_codes(count)
    elif mode == "random":
        blocks = (count + 25) // 26
        pool = _letter_codes(max(blocks, 1) * 26)
        codes = SplitMix64(seed).sample(pool, count)
    else:
        raise SymbolizationError(f"unknown assignment mode {mode!r}")
    return Assignment(mode, seed, tuple(zip(placeholders, codes)))


def _rewrite(text: str, journal: tuple[Op, ...], mapping: dict[str, str]):
    pieces = []
    ops = []
    cursor = 0
    length = 0
    for op in journal:
        if text[op.offset : op.offset + len(op.text)] != op.text:
            raise SymbolizationError("journal does not match its text")
        gap = text[cursor : op.offset]
        pieces.append(gap)
        length += len(gap)
        code = mapping[op.placeholder]
        written = code if op.state is None else f"{code}={op.state}"
        pieces.append(written)
        ops.append(replace(op, offset=length, text=written))
        length += len(written)
        cursor = op.offset + len(op.text)
    pieces.append(text[cursor:])
    return "".join(pieces), tuple(ops)


def apply_assignment(
    transformed: TransformedExample, assignment: Assignment
) -> FinalizedExample:
    """Swap placeholders for their letter codes, keeping journals aligned."""
    mapping = assignment.mapping()
    declared = set(transformed.table.placeholders())
    if set(mapping) != declared:
        raise SymbolizationError("assignment does not cover the symbol table")
    if len(set(mapping.values())) != len(mapping):
        raise SymbolizationError("assignment reuses a letter code")
    background, prompt_journal = _rewrite(
        transformed.background_question, transformed.prompt_journal, mapping
    )
    reasoning, cot_journal = _rewrite(
        transformed.reasoning, transformed.cot_journal, mapping
    )
    return FinalizedExample(
        item_id=transformed.item_id,
        dataset=transformed.dataset,
        split=transformed.split,
        background_question=background,
        reasoning=reasoning,
        answer=transformed.answer,
        table=transformed.table,
        assignment=assignment,
        prompt_journal=prompt_journal,
        cot_journal=cot_journal,
        cot_prefix=transformed.cot_prefix,
    )


# === inversion ===


def _invert(text: str, journal: tuple[Op, ...]) -> str:
    pieces = []
    cursor = 0
    for op in journal:
        if text[op.offset : op.offset + len(op.text)] != op.text:
            raise SymbolizationError("journal does not match its text")
        pieces.append(text[cursor : op.offset])
        pieces.append(op.original)
        cursor = op.offset + len(op.text)
    pieces.append(text[cursor:])
    return "".join(pieces)


def desymbolize(example: TransformedExample | FinalizedExample) -> tuple[str, str]:
    """The original (prompt, gold trace), byte for byte, from the journals."""
    prompt = _invert(example.background_question, example.prompt_journal)
    cot = _invert(example.reasoning, example.cot_journal)
    if example.cot_prefix:
        if not cot.startswith(TRACE_OPEN):
            raise SymbolizationError("trace prefix recorded but trace tag missing")
        cot = TRACE_OPEN + example.cot_prefix + cot[len(TRACE_OPEN):]
    return prompt, cot


def desymbolize_text(text: str, table: SymbolTable) -> str:
    """Best-effort inverse for free text (no journal): placeholders become
    names, state suffixes become descriptions, sentence starts recapitalize.
    """
    by_placeholder = dict(table.entries)

    def surface(match: re.Match) -> str:
        placeholder = match.group(1)
        state = match.group(2)
        var = by_placeholder.get(placeholder)
        if var is None:
            return match.group(0)
        if state == "=1" and var.set_description:
            return var.set_description
        if state == "=0" and var.unset_description:
            return var.unset_description
        return var.name

    pattern = re.compile(r"(\{symbol_[1-9][0-9]*\})(=[01])?")
    out = pattern.sub(surface, text)
    return _recapitalize(out)


_SENTENCE_START = re.compile(r"(^|[.!?:]\s+|\n)([a-z])")


def _recapitalize(text: str) -> str:
    return _SENTENCE_START.sub(lambda m: m.group(1) + m.group(2).upper(), text)


def to_external_record(finalized: FinalizedExample) -> dict:
    """The JSONL interchange form of a finalized example."""
    return {
        "source_id": finalized.item_id,
        "symbol_table": [
            {
                "placeholder": placeholder,
                "name": variable.name,
                "set_description": variable.set_description,
                "unset_description": variable.unset_description,
            }
            for placeholder, variable in finalized.table.entries
        ],
        "sym_prompt": finalized.background_question,
        "sym_cot": finalized.reasoning,
        "gold_answer": finalized.answer,
        "assignment": {
            "mode": finalized.assignment.mode,
            "seed": finalized.assignment.seed,
            "mapping": dict(finalized.assignment.pairs),
        },
    }
