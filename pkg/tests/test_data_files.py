"""Checks on the in-context example files shipped under capt/data/icl.

The causal-estimate examples must stay regenerable by the package's own
pipeline; the ontology-chain examples are hand-curated, so they are pinned
structurally plus a few byte anchors for the annotator's known quirks.
"""

import json
from importlib import resources

import pytest

from capt.anonymize import icl_examples
from capt.cladder import (
    STORY_POOL,
    CausalQuery,
    CladderStory,
    compute_estimand,
    decide_answer,
    render_causalcot_trace,
    render_prompt,
)
from capt.items import EventVariable, ReasoningItem
from capt.symbolize import symbolize_deterministic

ENTRY_KEYS = {
    "variable2name",
    "raw_prompt",
    "response",
    "background_question",
    "reasoning",
}

P0, P1 = "P(Y=1|X=0)", "P(Y=1|X=1)"


def read_shipped(dataset: str) -> list[dict]:
    text = (resources.files("capt.data") / "icl" / f"{dataset}.json").read_text()
    return json.loads(text)


def rebuild_cladder_entry(story: CladderStory, query: CausalQuery) -> dict:
    estimand, estimate = compute_estimand(query)
    prompt = render_prompt(story, query)
    item = ReasoningItem(
        id="cladder-icl-00000000",
        dataset="cladder",
        split="commonsense",
        prompt=prompt,
        gold_cot=render_causalcot_trace(story, query, estimand, estimate),
        gold_answer=decide_answer(estimate, query.polarity),
        events=[story.x.name, story.v2.name, story.y.name],
        seed_trace=0,
    )
    transformed = symbolize_deterministic(item, variables=list(story.variables()))
    return {
        "variable2name": transformed.table.to_payload(),
        "raw_prompt": item.prompt,
        "response": item.gold_cot,
        "background_question": transformed.background_question,
        "reasoning": transformed.reasoning,
    }


def expected_cladder() -> list[dict]:
    alarm = CladderStory(*STORY_POOL[0], template="mediation")
    tokens = CladderStory(
        x=EventVariable("rixq", "rixq occurs", "rixq does not occur"),
        v2=EventVariable("zuph", "zuph occurs", "zuph does not occur"),
        y=EventVariable("xevu", "xevu occurs", "xevu does not occur"),
        template="chain",
    )
    return [
        rebuild_cladder_entry(alarm, CausalQuery("ate", "increase", {P0: 0.42, P1: 0.51})),
        rebuild_cladder_entry(tokens, CausalQuery("nie", "decrease", {P0: 0.48, P1: 0.36})),
    ]


@pytest.mark.parametrize("dataset", ["cladder", "prontoqa"])
def test_shipped_entries_have_exact_key_set(dataset):
    for entry in read_shipped(dataset):
        assert set(entry) == ENTRY_KEYS


@pytest.mark.parametrize("dataset", ["cladder", "prontoqa"])
def test_symbol_tables_are_contiguous(dataset):
    for entry in read_shipped(dataset):
        table = entry["variable2name"]
        variables = [row["variable"] for row in table]
        assert variables == ["{symbol_%d}" % k for k in range(1, len(table) + 1)]
        names = [row["name"] for row in table]
        assert len(set(names)) == len(names)
        for row in table:
            assert set(row) == {"variable", "name", "set_description", "unset_description"}


def test_causal_file_matches_pipeline_output():
    # Guards against the shipped file going stale after renderer changes.
    shipped = read_shipped("cladder")
    rebuilt = expected_cladder()
    assert len(shipped) == len(rebuilt) == 2
    for got, want in zip(shipped, rebuilt):
        for key in ENTRY_KEYS:
            assert got[key] == want[key]


def test_causal_examples_agree_with_their_estimates():
    # 0.51-0.42 rises, 0.36-0.48 falls; each query polarity matches its sign.
    answers = [entry["response"].rsplit("<answer> ", 1)[1] for entry in read_shipped("cladder")]
    assert answers == ["Yes </answer>", "Yes </answer>"]


def test_ontology_file_structure():
    shipped = read_shipped("prontoqa")
    assert [len(entry["variable2name"]) for entry in shipped] == [11, 14, 11]
    for entry in shipped:
        assert entry["variable2name"][0]["variable"] == "{symbol_1}"
        # Entity is annotated first, so symbol_1 carries the query subject.
        assert entry["raw_prompt"].startswith("Given facts: ")
        assert "{symbol_1}" in entry["background_question"]
        assert entry["reasoning"].startswith(
            "<think> Let's think about it step by step. First, we have {symbol_1} is a {symbol_2}."
        )
        assert entry["reasoning"].endswith("</answer>")


def test_ontology_descriptions_are_null():
    for entry in read_shipped("prontoqa"):
        for row in entry["variable2name"]:
            assert row["set_description"] is None
            assert row["unset_description"] is None


def test_ontology_annotator_quirks_preserved():
    # The hand-written abstractions contain two slips that must survive any
    # regeneration verbatim: the number example closes with the class symbol
    # instead of the property symbol, and the mammal example pluralizes
    # outside the braces.
    shipped = read_shipped("prontoqa")
    assert "So {symbol_1} is {symbol_6}. " not in shipped[0]["reasoning"]
    assert "So {symbol_1} is {symbol_6}." in shipped[0]["reasoning"]
    assert "{symbol_1} is not {symbol_6}." in shipped[0]["background_question"]
    assert "{symbol_9}s are {symbol_10}s." in shipped[1]["background_question"]
    assert "{symbol_10}s are {symbol_13}s." in shipped[1]["background_question"]


def test_loader_returns_shipped_content():
    for dataset in ("cladder", "prontoqa"):
        assert icl_examples(dataset) == read_shipped(dataset)
