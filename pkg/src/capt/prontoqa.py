"""Ontology-chain question generation with step-by-step gold traces.

Each item gives a shuffled list of membership/property facts, a starting
fact about an entity, and a True/False property question whose answer
follows by forward chaining along a gold chain of `hops` rules. Splits:
commonsense facts agree with a curated taxonomy, antisense facts contradict
it, nonsense facts use fresh non-word tokens.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from capt.errors import (
    GenerationError,
    OntologyConflictError,
    ParseError,
    UndecidableQueryError,
)
from capt.items import EventVariable, ReasoningItem
from capt.lexicon import random_token
from capt.rng import SplitMix64, fold_label, stream

IS_A = "is_a"
HAS = "has_property"
LACKS = "lacks_property"

MAX_HOPS = 8


@dataclass(frozen=True)
class Rule:
    """subject is_a obj, or subject has/lacks the property obj."""

    subject: str
    relation: str
    obj: str

    def __post_init__(self):
        if self.relation not in (IS_A, HAS, LACKS):
            raise ParseError(f"unknown relation {self.relation!r}")


@dataclass(frozen=True)
class Ontology:
    rules: tuple[Rule, ...]


@dataclass(frozen=True)
class ChainQuery:
    entity: str
    start_category: str
    target: str
    negated: bool


@dataclass(frozen=True)
class ChainSpec:
    """Generation knobs: chain length, noise, and question polarity."""

    hops: int
    distractors: int = 3
    negated: bool = False
    entity_name: str | None = None

    def __post_init__(self):
        if not 1 <= self.hops <= MAX_HOPS:
            raise GenerationError(f"hops must be in [1, {MAX_HOPS}], got {self.hops}")
        if self.distractors < 0:
            raise GenerationError("distractors must be >= 0")


@dataclass(frozen=True)
class GoldChain:
    """The derivation the gold trace walks, step by step."""

    entity: str
    start_category: str
    steps: tuple[tuple[str, str], ...]  # (fact sentence, conclusion phrase)


# === curated taxonomy ===

# (child, parent) membership edges; a forest, children listed once.
CATEGORY_EDGES: tuple[tuple[str, str], ...] = (
    ("tabby", "cat"),
    ("cat", "feline"),
    ("feline", "carnivore"),
    ("dalmatian", "dog"),
    ("dog", "canine"),
    ("canine", "carnivore"),
    ("carnivore", "mammal"),
    ("rabbit", "mammal"),
    ("mammal", "vertebrate"),
    ("gecko", "lizard"),
    ("lizard", "reptile"),
    ("snake", "reptile"),
    ("reptile", "vertebrate"),
    ("sparrow", "bird"),
    ("bird", "vertebrate"),
    ("vertebrate", "chordate"),
    ("chordate", "bilaterian"),
    ("bilaterian", "animal"),
    ("moth", "lepidopteran"),
    ("butterfly", "lepidopteran"),
    ("lepidopteran", "insect"),
    ("bee", "hymenopteran"),
    ("hymenopteran", "insect"),
    ("insect", "arthropod"),
    ("spider", "arachnid"),
    ("arachnid", "arthropod"),
    ("arthropod", "invertebrate"),
    ("earthworm", "annelid"),
    ("annelid", "invertebrate"),
    ("nematode", "invertebrate"),
    ("invertebrate", "animal"),
    ("Mersenne prime", "prime number"),
    ("prime number", "natural number"),
    ("natural number", "integer"),
    ("integer", "real number"),
    ("real number", "number"),
    ("imaginary number", "number"),
)

# (category, property, has) assignments, mutually consistent under
# inheritance and arranged so most properties have an opposite-polarity
# contrast category somewhere off-path.
PROPERTY_RULES: tuple[tuple[str, str, bool], ...] = (
    ("mammal", "furry", True),
    ("snake", "furry", False),
    ("mammal", "warm-blooded", True),
    ("reptile", "warm-blooded", False),
    ("reptile", "cold-blooded", True),
    ("bird", "cold-blooded", False),
    ("bird", "feathered", True),
    ("mammal", "feathered", False),
    ("carnivore", "herbivorous", False),
    ("rabbit", "herbivorous", True),
    ("arthropod", "segmented", True),
    ("nematode", "segmented", False),
    ("insect", "six-legged", True),
    ("arachnid", "six-legged", False),
    ("arachnid", "eight-legged", True),
    ("insect", "eight-legged", False),
    ("animal", "multicellular", True),
    ("animal", "unicellular", False),
    ("real number", "real", True),
    ("imaginary number", "real", False),
    ("natural number", "positive", True),
    ("prime number", "composite", False),
    ("Mersenne prime", "composite", False),
)

NUMBER_CATS = frozenset(
    {"Mersenne prime", "prime number", "natural number", "integer",
     "real number", "number", "imaginary number"}
)

# Categories whose plural is not a bare +s, so they never take the
# plural-subject sentence form.
NO_PLURAL_FORM = frozenset({"tabby", "butterfly"})

ANIMAL_ENTITIES = ("Wren", "Max", "Polly", "Rex", "Stella", "Fae", "Sam", "Luna")
NUMBER_ENTITIES = ("127", "31", "7", "13", "8191", "3")

_PARENT = {child: parent for child, parent in CATEGORY_EDGES}
_CATEGORIES = tuple(sorted({c for e in CATEGORY_EDGES for c in e}))
_PROPERTIES = tuple(sorted({p for _, p, _ in PROPERTY_RULES}))


def pool_ancestors(cat: str) -> tuple[str, ...]:
    """Proper ancestors of a category in the curated taxonomy."""
    out = []
    cur = _PARENT.get(cat)
    while cur is not None:
        out.append(cur)
        cur = _PARENT.get(cur)
    return tuple(out)


def pool_entails(cat: str, prop: str) -> bool | None:
    """True/False if the taxonomy decides prop for cat, else None."""
    closure = (cat,) + pool_ancestors(cat)
    for subject, p, has in PROPERTY_RULES:
        if p == prop and subject in closure:
            return has
    return None


# === sentence rendering ===


def _cap(text: str) -> str:
    return text[0].upper() + text[1:] if text else text


def _plural(name: str) -> str:
    return name + "s"


def article(word: str) -> str:
    return "an" if word[:1].lower() in "aeiou" else "a"


def _forms_for(rule: Rule) -> tuple[str, ...]:
    forms = ["every", "each"]
    plural_ok = rule.subject not in NO_PLURAL_FORM
    if rule.relation == IS_A and rule.obj in NO_PLURAL_FORM:
        plural_ok = False
    if plural_ok:
        forms.append("plural")
    return tuple(forms)


def render_fact(rule: Rule, form: str) -> str:
    """One fact sentence in the requested surface form."""
    if form == "plural":
        subject = _cap(_plural(rule.subject))
        if rule.relation == IS_A:
            return f"{subject} are {_plural(rule.obj)}."
        verb = "are" if rule.relation == HAS else "are not"
        return f"{subject} {verb} {rule.obj}."
    head = "Every" if form == "every" else "Each"
    if rule.relation == IS_A:
        return f"{head} {rule.subject} is {article(rule.obj)} {rule.obj}."
    verb = "is" if rule.relation == HAS else "is not"
    return f"{head} {rule.subject} {verb} {rule.obj}."


def _conclusion(rule: Rule) -> str:
    if rule.relation == IS_A:
        return f"{article(rule.obj)} {rule.obj}"
    if rule.relation == HAS:
        return rule.obj
    return f"not {rule.obj}"


def render_chain_trace(chain: GoldChain, query: ChainQuery, answer: str) -> str:
    """The step-by-step gold trace wrapped in think/answer tags."""
    if answer not in ("True", "False"):
        raise ParseError(f"answer must be True or False, got {answer!r}")
    opening = (
        f"Let's think about it step by step. First, we have {chain.entity} is "
        f"{article(chain.start_category)} {chain.start_category}."
    )
    blocks = [opening]
    for fact, conclusion in chain.steps:
        blocks.append(f"{fact} So {chain.entity} is {conclusion}.")
    body = "\n\n".join(blocks)
    return (
        f"<think> {body}\n\nTherefore, the answer is {answer}. </think>\n"
        f"<answer> {answer} </answer>"
    )


# === forward chaining ===


def derive_answer(ontology: Ontology, query: ChainQuery) -> str:
    """Forward-chain from the start fact and read the queried target off."""
    cats = {query.start_category}
    props: dict[str, bool] = {}
    changed = True
    while changed:
        changed = False
        for rule in ontology.rules:
            if rule.subject not in cats:
                continue
            if rule.relation == IS_A:
                if rule.obj not in cats:
                    cats.add(rule.obj)
                    changed = True
            else:
                value = rule.relation == HAS
                if rule.obj in props and props[rule.obj] != value:
                    raise OntologyConflictError(
                        f"{query.entity} derives both {rule.obj} and its negation"
                    )
                if rule.obj not in props:
                    props[rule.obj] = value
                    changed = True
    if query.target in cats:
        base = True
    elif query.target in props:
        base = props[query.target]
    else:
        raise UndecidableQueryError(
            f"closure decides neither {query.target!r} nor its negation"
        )
    return "True" if base != query.negated else "False"


# === chain drawing per split ===


def _commonsense_candidates(hops: int) -> list[tuple[tuple[str, ...], tuple[str, str, bool]]]:
    """(category path, final property rule) pairs with len(path) == hops."""
    out = []
    for start in _CATEGORIES:
        path = [start]
        for _ in range(hops - 1):
            parent = _PARENT.get(path[-1])
            if parent is None:
                break
            path.append(parent)
        if len(path) != hops:
            continue
        for subject, prop, has in PROPERTY_RULES:
            if subject == path[-1]:
                out.append((tuple(path), (subject, prop, has)))
    return out


def _draw_chain_commonsense(rng: SplitMix64, hops: int) -> tuple[tuple[str, ...], str, bool]:
    candidates = _commonsense_candidates(hops)
    if not candidates:
        raise GenerationError(f"no commonsense chain of {hops} hops")
    path, (_, prop, has) = rng.choice(candidates)
    return path, prop, has


def _draw_chain_antisense(rng: SplitMix64, hops: int) -> tuple[tuple[str, ...], str, bool]:
    for _ in range(200):
        cats = rng.sample(_CATEGORIES, hops)
        ok = all(
            cats[i + 1] not in pool_ancestors(cats[i]) for i in range(hops - 1)
        )
        if not ok:
            continue
        prop = rng.choice(_PROPERTIES)
        has = rng.randrange(2) == 0
        if pool_entails(cats[-1], prop) == has:
            continue  # accidentally world-true; redraw
        return tuple(cats), prop, has
    raise GenerationError(f"could not draw an antisense chain of {hops} hops")


def _draw_chain_nonsense(rng: SplitMix64, hops: int, used: set[str]) -> tuple[tuple[str, ...], str, bool]:
    cats = [_fresh_token(rng, used) for _ in range(hops)]
    prop = _fresh_token(rng, used)
    has = rng.randrange(2) == 0
    return tuple(cats), prop, has


def _fresh_token(rng: SplitMix64, used: set[str]) -> str:
    # Reject endings whose plural is not a bare +s.
    while True:
        token = random_token(rng, used)
        if token[-1] in "sxz" or token.endswith(("ch", "sh")):
            continue
        used.add(token)
        return token


# === distractor drawing ===


def _pool_closure(start: str) -> frozenset[str]:
    return frozenset((start,) + pool_ancestors(start))


def _draw_distractors_commonsense(
    rng: SplitMix64, path: tuple[str, ...], prop: str, has: bool, count: int
) -> list[Rule]:
    """Pool-true rules that cannot flip the query.

    Any rule whose query-property subject lies outside the taxonomy closure
    of the start category is safe: item edges are a subset of pool edges, so
    the entity can never reach it.
    """
    closure = _pool_closure(path[0])
    chain_edges = {(path[i], path[i + 1]) for i in range(len(path) - 1)}
    candidates: list[Rule] = []
    contrast: list[Rule] = []
    for child, parent in CATEGORY_EDGES:
        if (child, parent) not in chain_edges:
            candidates.append(Rule(child, IS_A, parent))
    for subject, p, p_has in PROPERTY_RULES:
        rule = Rule(subject, HAS if p_has else LACKS, p)
        if subject == path[-1] and p == prop:
            continue  # the gold rule itself
        if p == prop:
            if subject not in closure:
                contrast.append(rule)
            continue
        candidates.append(rule)
    rng.shuffle(candidates)
    picked: list[Rule] = []
    if contrast and count >= 1:
        picked.append(rng.choice(contrast))
    picked.extend(candidates[: count - len(picked)])
    if len(picked) < count:
        raise GenerationError(
            f"only {len(picked)} distractors available, {count} requested"
        )
    return picked


def _item_reaches(edges: set[tuple[str, str]], start: str, goal: str) -> bool:
    seen = {start}
    frontier = [start]
    while frontier:
        node = frontier.pop()
        for a, b in edges:
            if a == node and b not in seen:
                if b == goal:
                    return True
                seen.add(b)
                frontier.append(b)
    return False


def _draw_distractors_offworld(
    rng: SplitMix64,
    path: tuple[str, ...],
    prop: str,
    has: bool,
    count: int,
    cats: tuple[str, ...],
    props: tuple[str, ...],
    fresh: bool,
    used: set[str],
) -> list[Rule]:
    """Distractors for the antisense and nonsense splits, closure-checked."""
    chain_rules = _chain_rules(path, prop, has)
    for _ in range(200):
        picked: list[Rule] = []
        if count >= 1:
            # Contrast cue: the query property with opposite polarity on an
            # off-chain category.
            if fresh:
                subject = _fresh_token(rng, used)
            else:
                subject = rng.choice([c for c in cats if c not in path])
            picked.append(Rule(subject, LACKS if has else HAS, prop))
        guard = 0
        while len(picked) < count and guard < 500:
            guard += 1
            if fresh and rng.randrange(2) == 0:
                a = rng.choice(path + tuple(r.subject for r in picked))
                rule = Rule(a, HAS if rng.randrange(2) else LACKS, _fresh_token(rng, used))
            elif fresh:
                rule = Rule(_fresh_token(rng, used), IS_A, _fresh_token(rng, used))
            elif rng.randrange(2) == 0:
                a, b = rng.sample(cats, 2)
                if b in pool_ancestors(a) or a in path:
                    continue
                rule = Rule(a, IS_A, b)
            else:
                subject = rng.choice(cats)
                p = rng.choice(props)
                p_has = rng.randrange(2) == 0
                if pool_entails(subject, p) == p_has:
                    continue
                rule = Rule(subject, HAS if p_has else LACKS, p)
            if rule in picked or rule in chain_rules:
                continue
            picked.append(rule)
        if len(picked) < count:
            continue
        if _rules_stay_sound(chain_rules + picked, path, prop, has):
            return picked
    raise GenerationError("could not draw a consistent distractor set")


def _rules_stay_sound(rules: list[Rule], path: tuple[str, ...], prop: str, has: bool) -> bool:
    query = ChainQuery("probe", path[0], prop, negated=False)
    try:
        answer = derive_answer(Ontology(tuple(rules)), query)
    except (OntologyConflictError, UndecidableQueryError):
        return False
    return answer == ("True" if has else "False")


def _chain_rules(path: tuple[str, ...], prop: str, has: bool) -> list[Rule]:
    rules = [Rule(path[i], IS_A, path[i + 1]) for i in range(len(path) - 1)]
    rules.append(Rule(path[-1], HAS if has else LACKS, prop))
    return rules


# === item assembly ===


def _shuffle_facts(rng: SplitMix64, gold: list[str], noise: list[str], hops: int) -> list[str]:
    facts = gold + noise
    for _ in range(100):
        rng.shuffle(facts)
        if hops < 3 or not noise:
            return facts
        positions = [facts.index(f) for f in gold]
        run = all(positions[i] + 1 == positions[i + 1] for i in range(len(positions) - 1))
        if not run:
            return facts
    raise GenerationError("could not break up the gold chain run")


def generate_prontoqa_item(seed: int, spec: ChainSpec, split: str = "commonsense") -> ReasoningItem:
    """One ontology-chain item, fully determined by (seed, spec, split)."""
    item, _ = _generate(seed, spec, split)
    return item


def _generate(seed: int, spec: ChainSpec, split: str) -> tuple[ReasoningItem, list[EventVariable]]:
    rng = stream(seed, "prontoqa", split, spec.hops, spec.distractors, int(spec.negated))
    used: set[str] = set()
    if split == "commonsense":
        path, prop, has = _draw_chain_commonsense(rng, spec.hops)
        noise_rules = _draw_distractors_commonsense(rng, path, prop, has, spec.distractors)
    elif split == "antisense":
        path, prop, has = _draw_chain_antisense(rng, spec.hops)
        noise_rules = _draw_distractors_offworld(
            rng, path, prop, has, spec.distractors, _CATEGORIES, _PROPERTIES,
            fresh=False, used=used,
        )
    elif split == "nonsense":
        path, prop, has = _draw_chain_nonsense(rng, spec.hops, used)
        noise_rules = _draw_distractors_offworld(
            rng, path, prop, has, spec.distractors, (), (), fresh=True, used=used,
        )
    else:
        raise GenerationError(f"unknown split {split!r}")

    entity = spec.entity_name
    if entity is None:
        if split == "commonsense" and path[0] in NUMBER_CATS:
            entity = rng.choice(NUMBER_ENTITIES)
        else:
            entity = rng.choice(ANIMAL_ENTITIES)

    chain_rules = _chain_rules(path, prop, has)
    gold_facts = [render_fact(r, rng.choice(_forms_for(r))) for r in chain_rules]
    noise_facts = [render_fact(r, rng.choice(_forms_for(r))) for r in noise_rules]
    facts = _shuffle_facts(rng, gold_facts, noise_facts, spec.hops)

    negated = spec.negated
    answer = derive_answer(
        Ontology(tuple(chain_rules + noise_rules)),
        ChainQuery(entity, path[0], prop, negated),
    )
    steps = tuple(
        (fact, _conclusion(rule)) for fact, rule in zip(gold_facts, chain_rules)
    )
    chain = GoldChain(entity, path[0], steps)
    query = ChainQuery(entity, path[0], prop, negated)
    cot = render_chain_trace(chain, query, answer)

    question = f"{entity} is {'not ' if negated else ''}{prop}."
    prompt = (
        "Given facts: " + " ".join(facts) + "\n\n"
        f"Given {entity} is {article(path[0])} {path[0]}, "
        f"answer the question: True or false: {question}"
    )

    names: list[str] = [entity]
    for rule in chain_rules + noise_rules:
        for name in (rule.subject, rule.obj):
            if name not in names:
                names.append(name)
    events = [_surface_as_in(prompt, n) for n in names]
    variables = [EventVariable(n) for n in names]

    item = ReasoningItem(
        id=(
            f"prontoqa-{split}-h{spec.hops}-d{spec.distractors}-"
            f"{'n' if negated else 'p'}-{seed:08d}"
        ),
        dataset="prontoqa",
        split=split,
        prompt=prompt,
        gold_cot=cot,
        gold_answer=answer,
        events=events,
        seed_trace=fold_label(seed, "prontoqa", split, spec.hops, spec.distractors, int(negated)),
    )
    item.validate()
    return item, variables


def _surface_as_in(prompt: str, name: str) -> str:
    for form in (name, _cap(name), _plural(name), _cap(_plural(name))):
        if form in prompt:
            return form
    raise GenerationError(f"surface {name!r} missing from generated prompt")


def parse_item_id(item_id: str) -> tuple[str, ChainSpec, int]:
    """(split, spec, seed) recovered from a generated item id."""
    parts = item_id.split("-")
    if len(parts) != 6 or parts[0] != "prontoqa":
        raise ParseError(f"not a generated chain item id: {item_id!r}")
    split, h_text, d_text, neg_text, seed_text = parts[1:]
    try:
        spec = ChainSpec(
            hops=int(h_text.removeprefix("h")),
            distractors=int(d_text.removeprefix("d")),
            negated={"n": True, "p": False}[neg_text],
        )
        return split, spec, int(seed_text)
    except (ValueError, KeyError) as exc:
        raise ParseError(f"not a generated chain item id: {item_id!r}") from exc


def variables_for_item(item: ReasoningItem) -> list[EventVariable]:
    """Event variables for deterministic symbolization, from the item id."""
    split, spec, seed = parse_item_id(item.id)
    _, variables = _generate(seed, spec, split)
    return variables


def pool_surfaces() -> tuple[str, ...]:
    """Every curated surface string, for event-freedom scans."""
    return tuple(sorted(set(_CATEGORIES) | set(_PROPERTIES) | set(ANIMAL_ENTITIES) | set(NUMBER_ENTITIES)))
