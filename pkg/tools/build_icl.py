"""Build the in-context example files under src/capt/data/icl/.

The causal-estimate examples are rendered by the package's own pipeline so
they stay consistent with generated items. The ontology-chain examples are
curated by hand (symbol numbering follows the annotator's reading order,
entity first), so they are embedded verbatim.

Usage: python3 tools/build_icl.py
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

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

OUT_DIR = pathlib.Path(__file__).resolve().parents[1] / "src" / "capt" / "data" / "icl"

P0, P1 = "P(Y=1|X=0)", "P(Y=1|X=1)"


def cladder_example(story: CladderStory, query: CausalQuery) -> dict:
    estimand, estimate = compute_estimand(query)
    prompt = render_prompt(story, query)
    answer = decide_answer(estimate, query.polarity)
    cot = render_causalcot_trace(story, query, estimand, estimate)
    item = ReasoningItem(
        id="cladder-icl-00000000",
        dataset="cladder",
        split="commonsense",
        prompt=prompt,
        gold_cot=cot,
        gold_answer=answer,
        events=[story.x.name, story.v2.name, story.y.name],
        seed_trace=0,
    )
    transformed = symbolize_deterministic(item, variables=list(story.variables()))
    return {
        "variable2name": transformed.table.to_payload(),
        "raw_prompt": prompt,
        "response": cot,
        "background_question": transformed.background_question,
        "reasoning": transformed.reasoning,
    }


def build_cladder() -> list[dict]:
    alarm = CladderStory(*STORY_POOL[0], template="mediation")
    tokens = CladderStory(
        x=EventVariable("rixq", "rixq occurs", "rixq does not occur"),
        v2=EventVariable("zuph", "zuph occurs", "zuph does not occur"),
        y=EventVariable("xevu", "xevu occurs", "xevu does not occur"),
        template="chain",
    )
    return [
        cladder_example(alarm, CausalQuery("ate", "increase", {P0: 0.42, P1: 0.51})),
        cladder_example(tokens, CausalQuery("nie", "decrease", {P0: 0.48, P1: 0.36})),
    ]


def _vars(names: list[str]) -> list[dict]:
    return [
        {
            "variable": f"{{symbol_{k}}}",
            "name": name,
            "set_description": None,
            "unset_description": None,
        }
        for k, name in enumerate(names, start=1)
    ]


PRONTOQA_EXAMPLES = [
    {
        "variable2name": _vars([
            "127", "Mersenne prime", "prime number", "natural number",
            "integer", "real number", "number", "composite",
            "imaginary number", "real", "positive",
        ]),
        "raw_prompt": "Given facts: Prime numbers are natural numbers. Every Mersenne prime is not composite. Imaginary numbers are not real. Every real number is a number. Natural numbers are integers. Every real number is real. Every Mersenne prime is a prime number. Natural numbers are positive. Prime numbers are not composite. Integers are real numbers.\n\nGiven 127 is a Mersenne prime, answer the question: True or false: 127 is not real.",
        "response": "<think> Let's think about it step by step. First, we have 127 is a Mersenne prime.\n\nEvery Mersenne prime is a prime number. So 127 is a prime number.\n\nPrime numbers are natural numbers. So 127 is a natural number.\n\nNatural numbers are integers. So 127 is an integer.\n\nIntegers are real numbers. So 127 is a real number.\n\nEvery real number is real. So 127 is real.\n\nTherefore, the answer is False. </think>\n<answer> False </answer>",
        "background_question": "Given facts: {symbol_3} are {symbol_4}. Every {symbol_2} is not {symbol_8}. {symbol_9} are not {symbol_6}. Every {symbol_6} is a {symbol_7}. {symbol_4} are {symbol_5}. Every {symbol_6} is {symbol_10}. Every {symbol_2} is a {symbol_3}. {symbol_4} are {symbol_11}. {symbol_3} are not {symbol_8}. {symbol_5} are {symbol_6}.\n\nGiven {symbol_1} is a {symbol_2}, answer the question: True or false: {symbol_1} is not {symbol_6}.",
        "reasoning": "<think> Let's think about it step by step. First, we have {symbol_1} is a {symbol_2}.\n\nEvery {symbol_2} is a {symbol_3}. So {symbol_1} is a {symbol_3}.\n\n{symbol_3} are {symbol_4}. So {symbol_1} is a {symbol_4}.\n\n{symbol_4} are {symbol_5}. So {symbol_1} is a {symbol_5}.\n\n{symbol_5} are {symbol_6}. So {symbol_1} is a {symbol_6}.\n\nEvery {symbol_6} is {symbol_10}. So {symbol_1} is {symbol_6}.\n\nTherefore, the answer is False. </think>\n<answer> False </answer>",
    },
    {
        "variable2name": _vars([
            "Wren", "tabby", "cat", "feline", "carnivore", "mammal", "furry",
            "vertebrate", "chordate", "bilaterian", "herbivorous", "snake",
            "animal", "multicellular",
        ]),
        "raw_prompt": "Given facts: Every carnivore is a mammal. Animals are multicellular. Every vertebrate is a chordate. Every carnivore is not herbivorous. Each snake is not furry. Every cat is a feline. Chordates are bilaterians. Each feline is a carnivore. Mammals are vertebrates. Mammals are furry. Bilaterians are animals. Every tabby is a cat.\n\nGiven Wren is a tabby, answer the question: True or false: Wren is furry.",
        "response": "<think> Let's think about it step by step. First, we have Wren is a tabby.\n\nEvery tabby is a cat. So Wren is a cat.\n\nEvery cat is a feline. So Wren is a feline.\n\nEach feline is a carnivore. So Wren is a carnivore.\n\nEvery carnivore is a mammal. So Wren is a mammal.\n\nMammals are furry. So Wren is furry.\n\nTherefore, the answer is True. </think>\n<answer> True </answer>",
        "background_question": "Given facts: Every {symbol_5} is a {symbol_6}. {symbol_13}s are {symbol_14}. Every {symbol_8} is a {symbol_9}. Every {symbol_5} is not {symbol_11}. Each {symbol_12} is not {symbol_7}. Every {symbol_3} is a {symbol_4}. {symbol_9}s are {symbol_10}s. Each {symbol_4} is a {symbol_5}. {symbol_6}s are {symbol_8}. {symbol_6}s are {symbol_7}. {symbol_10}s are {symbol_13}s. Every {symbol_2} is a {symbol_3}.\n\nGiven {symbol_1} is a {symbol_2}, answer the question: True or false: {symbol_1} is {symbol_7}.",
        "reasoning": "<think> Let's think about it step by step. First, we have {symbol_1} is a {symbol_2}.\n\nEvery {symbol_2} is a {symbol_3}. So {symbol_1} is a {symbol_3}.\n\nEvery {symbol_3} is a {symbol_4}. So {symbol_1} is a {symbol_4}.\n\nEach {symbol_4} is a {symbol_5}. So {symbol_1} is a {symbol_5}.\n\nEvery {symbol_5} is a {symbol_6}. So {symbol_1} is a {symbol_6}.\n\n{symbol_6}s are {symbol_7}. So {symbol_1} is {symbol_7}.\n\nTherefore, the answer is True. </think>\n<answer> True </answer>",
    },
    {
        "variable2name": _vars([
            "Wren", "butterfly", "lepidopteran", "insect", "eight-legged",
            "nematode", "segmented", "animal", "arthropod", "invertebrate",
            "unicellular",
        ]),
        "raw_prompt": "Given facts: Every butterfly is a lepidopteran. Lepidopterans are insects. Each insect is not eight-legged. Nematodes are not segmented. Animals are not unicellular. Arthropods are segmented. Each arthropod is an invertebrate. Every insect is an arthropod. Each invertebrate is an animal.\n\nGiven Wren is a butterfly, answer the question: True or false: Wren is not segmented.",
        "response": "<think> Let's think about it step by step. First, we have Wren is a butterfly.\n\nEvery butterfly is a lepidopteran. So Wren is a lepidopteran.\n\nLepidopterans are insects. So Wren is an insect.\n\nEvery insect is an arthropod. So Wren is an arthropod.\n\nArthropods are segmented. So Wren is segmented.\n\nTherefore, the answer is False. </think>\n<answer> False </answer>",
        "background_question": "Given facts: Every {symbol_2} is a {symbol_3}. {symbol_3}s are {symbol_4}s. Each {symbol_4} is not {symbol_5}. {symbol_6}s are not {symbol_7}. {symbol_8}s are not {symbol_11}. {symbol_9}s are {symbol_7}. Each {symbol_9} is an {symbol_10}. Every {symbol_4} is an {symbol_9}. Each {symbol_10} is an {symbol_8}.\n\nGiven {symbol_1} is a {symbol_2}, answer the question: True or false: {symbol_1} is not {symbol_7}.",
        "reasoning": "<think> Let's think about it step by step. First, we have {symbol_1} is a {symbol_2}.\n\nEvery {symbol_2} is a {symbol_3}. So {symbol_1} is a {symbol_3}.\n\n{symbol_3}s are {symbol_4}s. So {symbol_1} is a {symbol_4}.\n\nEvery {symbol_4} is an {symbol_9}. So {symbol_1} is an {symbol_9}.\n\n{symbol_9}s are {symbol_7}. So {symbol_1} is {symbol_7}.\n\nTherefore, the answer is False. </think>\n<answer> False </answer>",
    },
]


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    cladder = build_cladder()
    (OUT_DIR / "cladder.json").write_text(
        json.dumps(cladder, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    (OUT_DIR / "prontoqa.json").write_text(
        json.dumps(PRONTOQA_EXAMPLES, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    print(f"wrote {OUT_DIR / 'cladder.json'} ({len(cladder)} examples)")
    print(f"wrote {OUT_DIR / 'prontoqa.json'} ({len(PRONTOQA_EXAMPLES)} examples)")


if __name__ == "__main__":
    main()
