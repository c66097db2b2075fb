"""Causal-question generation with CausalCOT gold traces.

Items pair a tiny causal world (chain or mediation over three events) with a
probability query. Three splits control how the events relate to common
sense: commonsense stories keep their original roles, antisense stories mix
events from unrelated stories, and nonsense stories use fresh non-word
tokens.
"""

from __future__ import annotations

from dataclasses import dataclass

from capt.errors import GenerationError, ParseError
from capt.items import EventVariable, ReasoningItem
from capt.lexicon import random_token
from capt.rng import fold_label, stream

TEMPLATES = ("chain", "mediation")
QUERY_TYPES = ("ate", "nie", "conditional")
POLARITIES = ("increase", "decrease")

# Query types available per template; nie needs the whole effect to flow
# through the mediator, so it is generated on chains only.
_QUERIES_BY_TEMPLATE = {
    "chain": ("ate", "nie", "conditional"),
    "mediation": ("ate", "conditional"),
}

_QUERY_TYPE_NAMES = {
    "ate": "average treatment effect",
    "nie": "natural indirect effect",
    "conditional": "conditional probability",
}

MIN_EFFECT = 0.03

# Each story is a coherent (cause, mediator, outcome) triple. Names are
# globally unique so antisense mixtures never collide.
STORY_POOL: tuple[tuple[EventVariable, EventVariable, EventVariable], ...] = (
    (
        EventVariable("husband", "husband sets the alarm", "husband does not set the alarm"),
        EventVariable("wife", "wife affects the alarm", "wife does not affect the alarm"),
        EventVariable("alarm clock", "alarm rings", "alarm does not ring"),
    ),
    (
        EventVariable("smoking", "the person smokes heavily", "the person does not smoke"),
        EventVariable("tar deposits", "tar builds up in the lungs", "no tar builds up in the lungs"),
        EventVariable("lung cancer", "the person develops lung cancer", "the person stays free of lung cancer"),
    ),
    (
        EventVariable("rainfall", "it rains during the night", "it stays dry during the night"),
        EventVariable("sprinkler", "the sprinkler turns on", "the sprinkler stays off"),
        EventVariable("wet lawn", "the lawn is wet at dawn", "the lawn is dry at dawn"),
    ),
    (
        EventVariable("vaccination", "the patient receives the vaccine", "the patient skips the vaccine"),
        EventVariable("antibody response", "antibodies reach protective levels", "antibodies stay below protective levels"),
        EventVariable("infection", "the patient catches the infection", "the patient avoids the infection"),
    ),
    (
        EventVariable("fertilizer", "the field gets fertilizer", "the field gets no fertilizer"),
        EventVariable("soil nitrogen", "soil nitrogen becomes abundant", "soil nitrogen stays depleted"),
        EventVariable("crop yield", "the harvest is plentiful", "the harvest is poor"),
    ),
    (
        EventVariable("studying", "the student studies every evening", "the student skips studying"),
        EventVariable("retention", "the material sticks in memory", "the material fades from memory"),
        EventVariable("exam success", "the student passes the exam", "the student fails the exam"),
    ),
    (
        EventVariable("coffee", "the developer drinks coffee", "the developer avoids coffee"),
        EventVariable("alertness", "alertness stays high through the day", "alertness drops by noon"),
        EventVariable("productivity", "the sprint goal is reached", "the sprint goal is missed"),
    ),
    (
        EventVariable("roadwork", "roadwork blocks the main avenue", "the main avenue stays clear"),
        EventVariable("congestion", "traffic backs up downtown", "traffic flows freely downtown"),
        EventVariable("late arrival", "the commuter arrives late", "the commuter arrives on time"),
    ),
    (
        EventVariable("medication", "the patient takes the medication", "the patient skips the medication"),
        EventVariable("blood pressure", "blood pressure falls to a safe range", "blood pressure stays elevated"),
        EventVariable("recovery", "the patient recovers fully", "the patient remains ill"),
    ),
    (
        EventVariable("pesticide", "the orchard is sprayed with pesticide", "the orchard is left unsprayed"),
        EventVariable("pest population", "the pest population collapses", "the pest population explodes"),
        EventVariable("fruit quality", "the fruit stays unblemished", "the fruit is damaged"),
    ),
)


@dataclass(frozen=True)
class CladderStory:
    """Three events wired as a chain or mediation template."""

    x: EventVariable
    v2: EventVariable
    y: EventVariable
    template: str

    def variables(self) -> tuple[EventVariable, EventVariable, EventVariable]:
        return (self.x, self.v2, self.y)


@dataclass(frozen=True)
class CausalQuery:
    """A query type, its direction, and the probabilities given in the prompt."""

    query_type: str
    polarity: str
    given_data: dict[str, float]


# === estimation ===


def compute_estimand(query: CausalQuery) -> tuple[str, float]:
    """The estimand expression (in X/Y notation) and its numeric estimate."""
    if query.query_type in ("ate", "nie"):
        for key in ("P(Y=1|X=0)", "P(Y=1|X=1)"):
            if key not in query.given_data:
                raise ParseError(f"missing data field {key!r} for {query.query_type} query")
        estimate = query.given_data["P(Y=1|X=1)"] - query.given_data["P(Y=1|X=0)"]
        return "P(Y=1|X=1) - P(Y=1|X=0)", estimate
    if query.query_type == "conditional":
        if "P(Y=1|X=1)" not in query.given_data:
            raise ParseError("missing data field 'P(Y=1|X=1)' for conditional query")
        return "P(Y=1|X=1)", query.given_data["P(Y=1|X=1)"]
    raise ParseError(f"unknown query type {query.query_type!r}")


def decide_answer(estimate: float, polarity: str) -> str:
    """Yes when the estimate's sign matches the asked direction; 0 is No."""
    if polarity not in POLARITIES:
        raise ParseError(f"unknown polarity {polarity!r}")
    if estimate > 0 and polarity == "increase":
        return "Yes"
    if estimate < 0 and polarity == "decrease":
        return "Yes"
    return "No"


# === prompt rendering ===


def _cap(text: str) -> str:
    return text[0].upper() + text[1:] if text else text


def _pct(p: float) -> str:
    return str(round(p * 100))


def render_prompt(story: CladderStory, query: CausalQuery) -> str:
    x, v2, y = story.x, story.v2, story.y
    if story.template == "mediation":
        structure = (
            f"{_cap(x.name)} has a direct effect on {v2.name} and {y.name}. "
            f"{_cap(v2.name)} has a direct effect on {y.name}."
        )
    else:
        structure = (
            f"{_cap(x.name)} has a direct effect on {v2.name}. "
            f"{_cap(v2.name)} has a direct effect on {y.name}."
        )
    if query.query_type == "conditional":
        data = (
            f"When {x.set_description}, the probability that {y.set_description} "
            f"is {_pct(query.given_data['P(Y=1|X=1)'])}%."
        )
    else:
        data = (
            f"When {x.unset_description}, the probability that {y.set_description} "
            f"is {_pct(query.given_data['P(Y=1|X=0)'])}%. "
            f"When {x.set_description}, the probability that {y.set_description} "
            f"is {_pct(query.given_data['P(Y=1|X=1)'])}%."
        )
    if query.query_type == "conditional":
        if query.polarity == "increase":
            question = f"If {x.set_description}, is there any chance that {y.set_description}?"
        else:
            question = f"If {x.set_description}, is it impossible that {y.set_description}?"
    else:
        verb = "increase" if query.polarity == "increase" else "decrease"
        question = (
            f"If {x.set_description}, would it {verb} the chance that {y.set_description}?"
        )
    return (
        "Imagine a self-contained, hypothetical world with only the following "
        "conditions, and without any unmentioned factors or causal relationships: "
        f"{structure} {data} {question}"
    )


# === trace rendering ===


def _fmt(value: float) -> str:
    text = f"{value:.2f}"
    return "0.00" if text == "-0.00" else text


def _graph_text(template: str, x: str, v2: str, y: str) -> str:
    if template == "mediation":
        return f"{x}->{v2}, {x}->{y}, {v2}->{y}"
    return f"{x}->{v2}, {v2}->{y}"


def _formal_text(query_type: str, x: str, v2: str, y: str) -> str:
    if query_type == "ate":
        return f"E[{y} | do({x} = 1)] - E[{y} | do({x} = 0)]"
    if query_type == "nie":
        return f"E[{y}_{{{x}=0, {v2}=1}} - {y}_{{{x}=0, {v2}=0}}]"
    return f"P({y} = 1 | {x} = 1)"


def _estimand_text(query_type: str, x: str, y: str) -> str:
    if query_type == "conditional":
        return f"P({y}=1|{x}=1)"
    return f"P({y}=1|{x}=1) - P({y}=1|{x}=0)"


def render_causalcot_trace(
    story: CladderStory,
    query: CausalQuery,
    estimand: str,
    estimate: float,
    symbolized: bool = False,
    symbols: tuple[str, str, str] = ("{symbol_1}", "{symbol_2}", "{symbol_3}"),
) -> str:
    """The six-step CausalCOT trace, in raw X/V2/Y or symbolized notation."""
    if symbolized:
        x, v2, y = symbols
        preamble = ""
    else:
        x, v2, y = "X", "V2", "Y"
        preamble = (
            f"Let X = {story.x.name}; V2 = {story.v2.name}; Y = {story.y.name}.\n\n"
        )
    qtype = _QUERY_TYPE_NAMES[query.query_type]
    formal = _formal_text(query.query_type, x, v2, y)
    local_estimand = _estimand_text(query.query_type, x, y)
    if query.query_type == "conditional":
        data = f"P({y}=1 | {x}=1) = {_fmt(query.given_data['P(Y=1|X=1)'])}"
        calc = _fmt(estimate)
    else:
        p0 = query.given_data["P(Y=1|X=0)"]
        p1 = query.given_data["P(Y=1|X=1)"]
        data = (
            f"P({y}=1 | {x}=0) = {_fmt(p0)}; P({y}=1 | {x}=1) = {_fmt(p1)}"
        )
        calc = f"{_fmt(p1)} - {_fmt(p0)} = {_fmt(estimate)}"
    est = _fmt(estimate)
    if estimate > 0:
        closing = f"Since the estimate for the estimand is {est} > 0"
    elif estimate < 0:
        closing = f"Since the estimate for the estimand is {est} < 0"
    else:
        closing = f"Since the estimate for the estimand is {est}"
    answer = decide_answer(estimate, query.polarity)
    return (
        f"<think> {preamble}"
        f"Step 1) Extract the causal graph: {_graph_text(story.template, x, v2, y)}.\n\n"
        f'Step 2) Determine the query type: "{qtype}".\n\n'
        f"Step 3) Formalize the query: {formal}.\n\n"
        f"Step 4) Gather all relevant data: {data}.\n\n"
        f"Step 5) Deduce the estimand using causal inference: We use causal "
        f"inference to derive the estimand implied by the causal graph for the "
        f'query type "{qtype}":\n{formal}\n= {local_estimand}\n\n'
        f"Step 6) Calculate the estimate:\n{local_estimand}\n= {calc}\n\n"
        f"{closing}, the overall answer to the question is {answer.lower()}. </think>\n"
        f"<answer> {answer} </answer>"
    )


# === generation ===


def _draw_story(rng, split: str, template: str) -> CladderStory:
    if split == "commonsense":
        x, v2, y = rng.choice(STORY_POOL)
    elif split == "antisense":
        i, j, k = rng.sample(range(len(STORY_POOL)), 3)
        x, v2, y = STORY_POOL[i][0], STORY_POOL[j][1], STORY_POOL[k][2]
    elif split == "nonsense":
        used: set[str] = set()
        names = []
        for _ in range(3):
            token = random_token(rng, used)
            used.add(token)
            names.append(token)
        x, v2, y = (
            EventVariable(t, f"{t} occurs", f"{t} does not occur") for t in names
        )
    else:
        raise GenerationError(f"unknown split {split!r}")
    return CladderStory(x, v2, y, template)


def _draw_probabilities(rng, query_type: str) -> dict[str, float]:
    if query_type == "conditional":
        return {"P(Y=1|X=1)": rng.randint(3, 98) / 100}
    p0 = rng.randint(2, 98) / 100
    while True:
        p1 = rng.randint(2, 98) / 100
        if abs(p1 - p0) >= MIN_EFFECT - 1e-9:
            break
    return {"P(Y=1|X=0)": p0, "P(Y=1|X=1)": p1}


def _surface_as_in(prompt: str, surface: str) -> str:
    """The surface as it occurs in the prompt (possibly capitalized)."""
    if surface in prompt:
        return surface
    capped = _cap(surface)
    if capped in prompt:
        return capped
    raise GenerationError(f"surface {surface!r} missing from generated prompt")


def _draw_story_and_query(seed: int, template: str, split: str) -> tuple[CladderStory, CausalQuery]:
    rng = stream(seed, "cladder", template, split)
    story = _draw_story(rng, split, template)
    query_type = rng.choice(_QUERIES_BY_TEMPLATE[template])
    polarity = rng.choice(POLARITIES)
    query = CausalQuery(query_type, polarity, _draw_probabilities(rng, query_type))
    return story, query


def generate_cladder_item(seed: int, template: str | None = None, split: str = "commonsense") -> ReasoningItem:
    """One causal item, fully determined by (seed, template, split)."""
    if template is None:
        template = TEMPLATES[stream(seed, "cladder-template", split).randrange(2)]
    if template not in TEMPLATES:
        raise GenerationError(f"unknown template {template!r}")
    story, query = _draw_story_and_query(seed, template, split)
    query_type, polarity = query.query_type, query.polarity
    prompt = render_prompt(story, query)
    estimand, estimate = compute_estimand(query)
    answer = decide_answer(estimate, polarity)
    cot = render_causalcot_trace(story, query, estimand, estimate)
    events = []
    surfaces = [story.x.name, story.v2.name, story.y.name,
                story.x.set_description, story.y.set_description]
    if query_type != "conditional":
        surfaces.append(story.x.unset_description)
    for surface in surfaces:
        events.append(_surface_as_in(prompt, surface))
    item = ReasoningItem(
        id=f"cladder-{template}-{split}-{seed:08d}",
        dataset="cladder",
        split=split,
        prompt=prompt,
        gold_cot=cot,
        gold_answer=answer,
        events=events,
        seed_trace=fold_label(seed, "cladder", template, split),
    )
    item.validate()
    return item


def parse_item_id(item_id: str) -> tuple[str, str, int]:
    """(template, split, seed) recovered from a generated item id."""
    parts = item_id.split("-")
    if len(parts) != 4 or parts[0] != "cladder":
        raise ParseError(f"not a generated causal item id: {item_id!r}")
    template, split, seed_text = parts[1], parts[2], parts[3]
    if template not in TEMPLATES or not seed_text.isdigit():
        raise ParseError(f"not a generated causal item id: {item_id!r}")
    return template, split, int(seed_text)


def story_for_item(item_id: str) -> CladderStory:
    """Regenerate the story (names plus descriptions) behind a generated item."""
    template, split, seed = parse_item_id(item_id)
    story, _ = _draw_story_and_query(seed, template, split)
    return story


def query_for_item(item_id: str) -> CausalQuery:
    """Regenerate the query (type, direction, given data) behind a generated item."""
    template, split, seed = parse_item_id(item_id)
    _, query = _draw_story_and_query(seed, template, split)
    return query


def variables_for_item(item: ReasoningItem) -> list[EventVariable]:
    """Event variables for deterministic symbolization, from the item id."""
    return list(story_for_item(item.id).variables())


def pool_surfaces() -> tuple[str, ...]:
    """Every curated surface string, for event-freedom scans."""
    surfaces = set()
    for triple in STORY_POOL:
        for variable in triple:
            surfaces.update(variable.surfaces())
    return tuple(sorted(surfaces))
