"""Ontology-chain generation: golden traces, oracle agreement, split rules."""

import re

import pytest

from capt.errors import (
    GenerationError,
    OntologyConflictError,
    ParseError,
    UndecidableQueryError,
)
from capt.lexicon import is_english
from capt.prontoqa import (
    ANIMAL_ENTITIES,
    CATEGORY_EDGES,
    HAS,
    IS_A,
    LACKS,
    NUMBER_CATS,
    NUMBER_ENTITIES,
    PROPERTY_RULES,
    ChainQuery,
    ChainSpec,
    GoldChain,
    Ontology,
    Rule,
    derive_answer,
    generate_prontoqa_item,
    parse_item_id,
    pool_ancestors,
    render_chain_trace,
    render_fact,
    variables_for_item,
)

# === independent oracle: parse the rendered prompt, saturate naively ===

_QUESTION = re.compile(
    r"Given (?P<entity>.+?) is an? (?P<start>.+?), answer the question: "
    r"True or false: (?P<entity2>.+?) is (?P<neg>not )?(?P<target>.+)\."
)


def parse_prompt(prompt, names):
    """(rules, entity, start, target, negated) parsed back out of the text.

    Everything is lowercased; names disambiguate plural objects.
    """
    names = {n.lower() for n in names}
    facts_text, question_text = prompt.split("\n\n")
    assert facts_text.startswith("Given facts: ")
    rules = []
    for sentence in facts_text[len("Given facts: "):].split(". "):
        sentence = sentence.rstrip(".")
        if sentence.startswith(("Every ", "Each ")):
            rest = sentence.split(" ", 1)[1]
            subject, obj = rest.split(" is ", 1)
            subject = subject.lower()
            if obj.startswith(("a ", "an ")):
                rules.append((subject, "is_a", obj.split(" ", 1)[1].lower()))
            elif obj.startswith("not "):
                rules.append((subject, "lacks", obj[4:].lower()))
            else:
                rules.append((subject, "has", obj.lower()))
        else:
            subject_plural, obj = sentence.split(" are ", 1)
            assert subject_plural.endswith("s")
            subject = subject_plural[:-1].lower()
            obj = obj.lower()
            negative = obj.startswith("not ")
            if negative:
                obj = obj[4:]
            exact_name = obj in names
            plural_name = obj.endswith("s") and obj[:-1] in names
            assert exact_name != plural_name, f"ambiguous object {obj!r}"
            if plural_name:
                assert not negative
                rules.append((subject, "is_a", obj[:-1]))
            else:
                rules.append((subject, "lacks" if negative else "has", obj))
    match = _QUESTION.fullmatch(question_text)
    assert match, question_text
    assert match["entity"] == match["entity2"]
    return (
        rules,
        match["entity"],
        match["start"].lower(),
        match["target"].lower(),
        match["neg"] is not None,
    )


def saturate(rules, start):
    """Naive fixpoint over (kind, name) atoms; rescans every rule each pass."""
    atoms = {("cat", start)}
    while True:
        grown = set(atoms)
        for subject, relation, obj in rules:
            if ("cat", subject) in atoms:
                kind = {"is_a": "cat", "has": "has", "lacks": "lacks"}[relation]
                grown.add((kind, obj))
        if grown == atoms:
            return atoms
        atoms = grown


def oracle_answer(item):
    names = [v.name for v in variables_for_item(item)]
    rules, _, start, target, negated = parse_prompt(item.prompt, names)
    atoms = saturate(rules, start)
    assert not (("has", target) in atoms and ("lacks", target) in atoms)
    if ("has", target) in atoms or ("cat", target) in atoms:
        base = True
    elif ("lacks", target) in atoms:
        base = False
    else:
        raise AssertionError(f"undecided target {target!r}")
    return "True" if base != negated else "False"


# === golden texts ===

TRACE_127 = (
    "<think> Let's think about it step by step. First, we have 127 is a "
    "Mersenne prime.\n\nEvery Mersenne prime is a prime number. So 127 is a "
    "prime number.\n\nPrime numbers are natural numbers. So 127 is a natural "
    "number.\n\nNatural numbers are integers. So 127 is an integer.\n\n"
    "Integers are real numbers. So 127 is a real number.\n\nEvery real number "
    "is real. So 127 is real.\n\nTherefore, the answer is False. </think>\n"
    "<answer> False </answer>"
)

TRACE_TABBY = (
    "<think> Let's think about it step by step. First, we have Wren is a "
    "tabby.\n\nEvery tabby is a cat. So Wren is a cat.\n\nEvery cat is a "
    "feline. So Wren is a feline.\n\nEach feline is a carnivore. So Wren is a "
    "carnivore.\n\nEvery carnivore is a mammal. So Wren is a mammal.\n\n"
    "Mammals are furry. So Wren is furry.\n\nTherefore, the answer is True. "
    "</think>\n<answer> True </answer>"
)

TRACE_BUTTERFLY = (
    "<think> Let's think about it step by step. First, we have Wren is a "
    "butterfly.\n\nEvery butterfly is a lepidopteran. So Wren is a "
    "lepidopteran.\n\nLepidopterans are insects. So Wren is an insect.\n\n"
    "Every insect is an arthropod. So Wren is an arthropod.\n\nArthropods are "
    "segmented. So Wren is segmented.\n\nTherefore, the answer is False. "
    "</think>\n<answer> False </answer>"
)


def build_trace(entity, start, rule_forms, target, negated):
    from capt.prontoqa import _conclusion

    rules = [Rule(*r) for r, _ in rule_forms]
    facts = [render_fact(rule, form) for rule, (_, form) in zip(rules, rule_forms)]
    steps = tuple((fact, _conclusion(rule)) for fact, rule in zip(facts, rules))
    query = ChainQuery(entity, start, target, negated)
    answer = derive_answer(Ontology(tuple(rules)), query)
    return render_chain_trace(GoldChain(entity, start, steps), query, answer)


class TestGoldenTraces:
    def test_number_chain_trace_bytes(self):
        trace = build_trace(
            "127",
            "Mersenne prime",
            [
                (("Mersenne prime", IS_A, "prime number"), "every"),
                (("prime number", IS_A, "natural number"), "plural"),
                (("natural number", IS_A, "integer"), "plural"),
                (("integer", IS_A, "real number"), "plural"),
                (("real number", HAS, "real"), "every"),
            ],
            "real",
            negated=True,
        )
        assert trace == TRACE_127

    def test_tabby_chain_trace_bytes(self):
        trace = build_trace(
            "Wren",
            "tabby",
            [
                (("tabby", IS_A, "cat"), "every"),
                (("cat", IS_A, "feline"), "every"),
                (("feline", IS_A, "carnivore"), "each"),
                (("carnivore", IS_A, "mammal"), "every"),
                (("mammal", HAS, "furry"), "plural"),
            ],
            "furry",
            negated=False,
        )
        assert trace == TRACE_TABBY

    def test_butterfly_chain_trace_bytes(self):
        trace = build_trace(
            "Wren",
            "butterfly",
            [
                (("butterfly", IS_A, "lepidopteran"), "every"),
                (("lepidopteran", IS_A, "insect"), "plural"),
                (("insect", IS_A, "arthropod"), "every"),
                (("arthropod", HAS, "segmented"), "plural"),
            ],
            "segmented",
            negated=True,
        )
        assert trace == TRACE_BUTTERFLY

    def test_fact_sentence_forms(self):
        cases = [
            (Rule("prime number", IS_A, "natural number"), "plural",
             "Prime numbers are natural numbers."),
            (Rule("Mersenne prime", LACKS, "composite"), "every",
             "Every Mersenne prime is not composite."),
            (Rule("imaginary number", LACKS, "real"), "plural",
             "Imaginary numbers are not real."),
            (Rule("real number", IS_A, "number"), "every",
             "Every real number is a number."),
            (Rule("natural number", HAS, "positive"), "plural",
             "Natural numbers are positive."),
            (Rule("snake", LACKS, "furry"), "each", "Each snake is not furry."),
            (Rule("arthropod", IS_A, "invertebrate"), "each",
             "Each arthropod is an invertebrate."),
            (Rule("animal", LACKS, "unicellular"), "plural",
             "Animals are not unicellular."),
        ]
        for rule, form, wanted in cases:
            assert render_fact(rule, form) == wanted


class TestDeriveAnswer:
    CHAIN = Ontology(
        (
            Rule("tabby", IS_A, "cat"),
            Rule("cat", IS_A, "feline"),
            Rule("feline", HAS, "whiskered"),
            Rule("gerbil", LACKS, "whiskered"),
        )
    )

    def test_positive_property(self):
        assert derive_answer(self.CHAIN, ChainQuery("Wren", "tabby", "whiskered", False)) == "True"

    def test_negated_question_flips(self):
        assert derive_answer(self.CHAIN, ChainQuery("Wren", "tabby", "whiskered", True)) == "False"

    def test_lacks_property(self):
        ont = Ontology((Rule("gerbil", LACKS, "whiskered"),))
        assert derive_answer(ont, ChainQuery("Pip", "gerbil", "whiskered", False)) == "False"
        assert derive_answer(ont, ChainQuery("Pip", "gerbil", "whiskered", True)) == "True"

    def test_category_membership_target(self):
        assert derive_answer(self.CHAIN, ChainQuery("Wren", "tabby", "feline", False)) == "True"

    def test_reflexive_start(self):
        assert derive_answer(self.CHAIN, ChainQuery("Wren", "tabby", "tabby", False)) == "True"

    def test_undecidable_raises(self):
        with pytest.raises(UndecidableQueryError):
            derive_answer(self.CHAIN, ChainQuery("Wren", "tabby", "feathered", False))

    def test_unreachable_rule_does_not_fire(self):
        with pytest.raises(UndecidableQueryError):
            derive_answer(self.CHAIN, ChainQuery("Pip", "gerbil", "furry", False))

    def test_conflict_raises(self):
        ont = Ontology(
            (
                Rule("tabby", IS_A, "cat"),
                Rule("cat", HAS, "furry"),
                Rule("tabby", LACKS, "furry"),
            )
        )
        with pytest.raises(OntologyConflictError):
            derive_answer(ont, ChainQuery("Wren", "tabby", "furry", False))


class TestPool:
    def test_pool_is_self_consistent(self):
        rules = [(a, "is_a", b) for a, b in CATEGORY_EDGES]
        rules += [(c, "has" if has else "lacks", p) for c, p, has in PROPERTY_RULES]
        for cat in {c for e in CATEGORY_EDGES for c in e}:
            atoms = saturate(rules, cat)
            for _, prop, _ in PROPERTY_RULES:
                assert not (
                    ("has", prop) in atoms and ("lacks", prop) in atoms
                ), f"{cat} derives both polarities of {prop}"

    def test_every_hop_count_has_commonsense_chains(self):
        from capt.prontoqa import _commonsense_candidates

        for hops in range(1, 9):
            assert _commonsense_candidates(hops), f"no chain of {hops} hops"

    def test_taxonomy_is_a_forest(self):
        children = [a for a, _ in CATEGORY_EDGES]
        assert len(children) == len(set(children))
        for cat in children:
            assert cat not in pool_ancestors(cat)


class TestGeneration:
    SPECS = [
        ChainSpec(1, 0, False),
        ChainSpec(2, 3, True),
        ChainSpec(4, 5, False),
        ChainSpec(5, 8, True),
        ChainSpec(8, 15, False),
    ]

    def test_same_seed_same_item(self):
        spec = ChainSpec(4, 5, False)
        for split in ("commonsense", "antisense", "nonsense"):
            assert generate_prontoqa_item(9, spec, split) == generate_prontoqa_item(9, spec, split)

    def test_fact_count_is_hops_plus_distractors(self):
        for spec in self.SPECS:
            for split in ("commonsense", "antisense", "nonsense"):
                item = generate_prontoqa_item(21, spec, split)
                facts = item.prompt.split("\n\n")[0][len("Given facts: "):]
                count = len([s for s in facts.split(". ") if s])
                assert count == spec.hops + spec.distractors

    def test_trace_block_count(self):
        for spec in self.SPECS:
            item = generate_prontoqa_item(33, spec, "commonsense")
            body = item.gold_cot.split("<think> ")[1].split("\n\nTherefore")[0]
            assert len(body.split("\n\n")) == 1 + spec.hops

    def test_id_round_trip(self):
        item = generate_prontoqa_item(77, ChainSpec(3, 4, True), "antisense")
        split, spec, seed = parse_item_id(item.id)
        assert (split, seed) == ("antisense", 77)
        assert (spec.hops, spec.distractors, spec.negated) == (3, 4, True)
        assert generate_prontoqa_item(seed, spec, split) == item

    def test_oracle_agreement(self):
        from capt.rng import stream

        rng = stream(5, "oracle-mix")
        for seed in range(300):
            spec = ChainSpec(rng.randint(1, 8), rng.randint(0, 15), rng.randrange(2) == 1)
            split = ("commonsense", "antisense", "nonsense")[seed % 3]
            item = generate_prontoqa_item(seed, spec, split)
            assert item.gold_answer == oracle_answer(item), item.id

    def test_gold_chain_not_a_contiguous_ordered_run(self):
        for seed in range(40):
            spec = ChainSpec(4, 6, False)
            item = generate_prontoqa_item(seed, spec, "commonsense")
            facts = [
                s + "." for s in
                item.prompt.split("\n\n")[0][len("Given facts: "):].rstrip(".").split(". ")
            ]
            gold = re.findall(r"\n\n(.+?) So ", item.gold_cot)
            positions = [facts.index(fact) for fact in gold]
            assert positions != sorted(positions) or any(
                positions[i] + 1 != positions[i + 1] for i in range(len(positions) - 1)
            )

    def test_commonsense_rules_are_pool_true(self):
        edges = {(a.lower(), b.lower()) for a, b in CATEGORY_EDGES}
        props = {(c.lower(), p, has) for c, p, has in PROPERTY_RULES}
        for seed in range(30):
            item = generate_prontoqa_item(seed, ChainSpec(4, 6, False), "commonsense")
            names = [v.name for v in variables_for_item(item)]
            rules, _, start, _, _ = parse_prompt(item.prompt, names)
            for subject, relation, obj in rules:
                if relation == "is_a":
                    assert (subject, obj) in edges
                else:
                    assert (subject, obj, relation == "has") in props

    def test_antisense_chain_contradicts_pool(self):
        lower_parent = {a.lower(): b.lower() for a, b in CATEGORY_EDGES}

        def lower_closure(cat):
            out = set()
            while cat in lower_parent:
                cat = lower_parent[cat]
                out.add(cat)
            return out

        for seed in range(30):
            item = generate_prontoqa_item(seed, ChainSpec(4, 4, False), "antisense")
            gold = re.findall(r"\n\n(.+?) So ", item.gold_cot)
            names = [v.name for v in variables_for_item(item)]
            chain_rules, _, start, _, _ = parse_prompt(
                "Given facts: " + " ".join(gold) + "\n\n" + item.prompt.split("\n\n")[1],
                names,
            )
            for subject, relation, obj in chain_rules[:-1]:
                assert relation == "is_a"
                assert obj not in lower_closure(subject)

    def test_nonsense_names_are_fresh_tokens(self):
        for seed in range(20):
            item = generate_prontoqa_item(seed, ChainSpec(3, 4, False), "nonsense")
            names = [v.name for v in variables_for_item(item)]
            assert names[0] in ANIMAL_ENTITIES
            for name in names[1:]:
                assert not is_english(name)
                assert not name.endswith(("s", "x", "z", "ch", "sh"))

    def test_number_chains_use_number_entities(self):
        seen_number_entity = False
        for seed in range(200):
            item = generate_prontoqa_item(seed, ChainSpec(4, 2, False), "commonsense")
            names = [v.name for v in variables_for_item(item)]
            rules, entity, start, _, _ = parse_prompt(item.prompt, names)
            if any(start == c.lower() for c in NUMBER_CATS):
                assert entity in NUMBER_ENTITIES
                seen_number_entity = True
            else:
                assert entity in ANIMAL_ENTITIES
        assert seen_number_entity

    def test_events_start_with_entity_and_validate(self):
        item = generate_prontoqa_item(8, ChainSpec(5, 5, True), "commonsense")
        item.validate()
        assert item.events[0] in ANIMAL_ENTITIES + NUMBER_ENTITIES

    def test_answer_balance(self):
        from capt.rng import stream

        rng = stream(12, "balance")
        true_count = 0
        for seed in range(500):
            spec = ChainSpec(rng.randint(1, 8), rng.randint(0, 10), rng.randrange(2) == 1)
            split = ("commonsense", "antisense", "nonsense")[seed % 3]
            true_count += generate_prontoqa_item(seed, spec, split).gold_answer == "True"
        assert 0.35 <= true_count / 500 <= 0.65

    def test_spec_validation(self):
        with pytest.raises(GenerationError):
            ChainSpec(0, 3, False)
        with pytest.raises(GenerationError):
            ChainSpec(9, 3, False)
        with pytest.raises(GenerationError):
            ChainSpec(3, -1, False)

    def test_unknown_split_rejected(self):
        with pytest.raises(GenerationError):
            generate_prontoqa_item(0, ChainSpec(3, 3, False), "sideways")

    def test_bad_item_id_rejected(self):
        with pytest.raises(ParseError):
            parse_item_id("cladder-chain-commonsense-00000007")
        with pytest.raises(ParseError):
            parse_item_id("prontoqa-commonsense-hx-d2-p-00000001")
