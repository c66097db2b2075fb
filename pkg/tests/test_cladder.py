"""Causal-estimate item generation: golden traces, estimands, properties."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from capt.cladder import (
    STORY_POOL,
    CausalQuery,
    CladderStory,
    compute_estimand,
    decide_answer,
    generate_cladder_item,
    parse_item_id,
    query_for_item,
    render_causalcot_trace,
    render_prompt,
    story_for_item,
    variables_for_item,
)
from capt.errors import GenerationError, ParseError
from capt.items import EventVariable
from capt.lexicon import is_english

P0 = "P(Y=1|X=0)"
P1 = "P(Y=1|X=1)"

# The reference trace for the alarm-clock mediation example, step structure
# and wording pinned byte-for-byte.
ALARM_TRACE = (
    "<think> Let X = husband; V2 = wife; Y = alarm clock.\n\n"
    "Step 1) Extract the causal graph: X->V2, X->Y, V2->Y.\n\n"
    'Step 2) Determine the query type: "average treatment effect".\n\n'
    "Step 3) Formalize the query: E[Y | do(X = 1)] - E[Y | do(X = 0)].\n\n"
    "Step 4) Gather all relevant data: P(Y=1 | X=0) = 0.42; P(Y=1 | X=1) = 0.51.\n\n"
    "Step 5) Deduce the estimand using causal inference: We use causal inference "
    "to derive the estimand implied by the causal graph for the query type "
    '"average treatment effect":\n'
    "E[Y | do(X = 1)] - E[Y | do(X = 0)]\n"
    "= P(Y=1|X=1) - P(Y=1|X=0)\n\n"
    "Step 6) Calculate the estimate:\n"
    "P(Y=1|X=1) - P(Y=1|X=0)\n"
    "= 0.51 - 0.42 = 0.09\n\n"
    "Since the estimate for the estimand is 0.09 > 0, the overall answer to the "
    "question is yes. </think>\n<answer> Yes </answer>"
)

ALARM_TRACE_SYMBOLIZED = (
    "<think> Step 1) Extract the causal graph: {symbol_1}->{symbol_2}, "
    "{symbol_1}->{symbol_3}, {symbol_2}->{symbol_3}.\n\n"
    'Step 2) Determine the query type: "average treatment effect".\n\n'
    "Step 3) Formalize the query: E[{symbol_3} | do({symbol_1} = 1)] - "
    "E[{symbol_3} | do({symbol_1} = 0)].\n\n"
    "Step 4) Gather all relevant data: P({symbol_3}=1 | {symbol_1}=0) = 0.42; "
    "P({symbol_3}=1 | {symbol_1}=1) = 0.51.\n\n"
    "Step 5) Deduce the estimand using causal inference: We use causal inference "
    "to derive the estimand implied by the causal graph for the query type "
    '"average treatment effect":\n'
    "E[{symbol_3} | do({symbol_1} = 1)] - E[{symbol_3} | do({symbol_1} = 0)]\n"
    "= P({symbol_3}=1|{symbol_1}=1) - P({symbol_3}=1|{symbol_1}=0)\n\n"
    "Step 6) Calculate the estimate:\n"
    "P({symbol_3}=1|{symbol_1}=1) - P({symbol_3}=1|{symbol_1}=0)\n"
    "= 0.51 - 0.42 = 0.09\n\n"
    "Since the estimate for the estimand is 0.09 > 0, the overall answer to the "
    "question is yes. </think>\n<answer> Yes </answer>"
)

# Chain template with a natural-indirect-effect query on abstract tokens.
TOKEN_TRACE = (
    "<think> Let X = rixq; V2 = zuph; Y = xevu.\n\n"
    "Step 1) Extract the causal graph: X->V2, V2->Y.\n\n"
    'Step 2) Determine the query type: "natural indirect effect".\n\n'
    "Step 3) Formalize the query: E[Y_{X=0, V2=1} - Y_{X=0, V2=0}].\n\n"
    "Step 4) Gather all relevant data: P(Y=1 | X=0) = 0.48; P(Y=1 | X=1) = 0.36.\n\n"
    "Step 5) Deduce the estimand using causal inference: We use causal inference "
    "to derive the estimand implied by the causal graph for the query type "
    '"natural indirect effect":\n'
    "E[Y_{X=0, V2=1} - Y_{X=0, V2=0}]\n"
    "= P(Y=1|X=1) - P(Y=1|X=0)\n\n"
    "Step 6) Calculate the estimate:\n"
    "P(Y=1|X=1) - P(Y=1|X=0)\n"
    "= 0.36 - 0.48 = -0.12\n\n"
    "Since the estimate for the estimand is -0.12 < 0, the overall answer to the "
    "question is yes. </think>\n<answer> Yes </answer>"
)

ALARM_STORY = CladderStory(*STORY_POOL[0], template="mediation")


def token_story() -> CladderStory:
    return CladderStory(
        x=EventVariable("rixq", "rixq occurs", "rixq does not occur"),
        v2=EventVariable("zuph", "zuph occurs", "zuph does not occur"),
        y=EventVariable("xevu", "xevu occurs", "xevu does not occur"),
        template="chain",
    )


class TestEstimand:
    def test_ate_difference_is_exact(self):
        query = CausalQuery("ate", "increase", {P0: 0.42, P1: 0.51})
        estimand, estimate = compute_estimand(query)
        assert estimand == "P(Y=1|X=1) - P(Y=1|X=0)"
        assert abs(estimate - 0.09) < 1e-12
        assert decide_answer(estimate, "increase") == "Yes"

    def test_nie_difference_is_exact(self):
        query = CausalQuery("nie", "decrease", {P0: 0.48, P1: 0.36})
        estimand, estimate = compute_estimand(query)
        assert estimand == "P(Y=1|X=1) - P(Y=1|X=0)"
        assert abs(estimate - (-0.12)) < 1e-12
        assert decide_answer(estimate, "decrease") == "Yes"

    def test_conditional_reads_given_probability(self):
        query = CausalQuery("conditional", "increase", {P1: 0.37})
        estimand, estimate = compute_estimand(query)
        assert estimand == "P(Y=1|X=1)"
        assert estimate == 0.37

    def test_missing_data_key_raises(self):
        with pytest.raises(ParseError):
            compute_estimand(CausalQuery("ate", "increase", {P1: 0.5}))

    def test_zero_estimate_answers_no(self):
        assert decide_answer(0.0, "increase") == "No"
        assert decide_answer(0.0, "decrease") == "No"

    @given(
        p0=st.integers(2, 98).map(lambda n: n / 100),
        p1=st.integers(2, 98).map(lambda n: n / 100),
    )
    def test_answer_consistency(self, p0, p1):
        query = CausalQuery("ate", "increase", {P0: p0, P1: p1})
        _, estimate = compute_estimand(query)
        straight = decide_answer(estimate, "increase")
        flipped = decide_answer(estimate, "decrease")
        if abs(estimate) > 1e-9:
            assert {straight, flipped} == {"Yes", "No"}
        else:
            assert straight == flipped == "No"


class TestGoldenTraces:
    def test_alarm_trace_bytes(self):
        query = CausalQuery("ate", "increase", {P0: 0.42, P1: 0.51})
        estimand, estimate = compute_estimand(query)
        trace = render_causalcot_trace(ALARM_STORY, query, estimand, estimate)
        assert trace == ALARM_TRACE

    def test_alarm_trace_symbolized_bytes(self):
        query = CausalQuery("ate", "increase", {P0: 0.42, P1: 0.51})
        estimand, estimate = compute_estimand(query)
        trace = render_causalcot_trace(
            ALARM_STORY, query, estimand, estimate, symbolized=True
        )
        assert trace == ALARM_TRACE_SYMBOLIZED

    def test_token_trace_bytes(self):
        query = CausalQuery("nie", "decrease", {P0: 0.48, P1: 0.36})
        estimand, estimate = compute_estimand(query)
        trace = render_causalcot_trace(token_story(), query, estimand, estimate)
        assert trace == TOKEN_TRACE

    def test_alarm_prompt_bytes(self):
        query = CausalQuery("ate", "increase", {P0: 0.42, P1: 0.51})
        prompt = render_prompt(ALARM_STORY, query)
        assert prompt == (
            "Imagine a self-contained, hypothetical world with only the "
            "following conditions, and without any unmentioned factors or "
            "causal relationships: Husband has a direct effect on wife and "
            "alarm clock. Wife has a direct effect on alarm clock. When "
            "husband does not set the alarm, the probability that alarm rings "
            "is 42%. When husband sets the alarm, the probability that alarm "
            "rings is 51%. If husband sets the alarm, would it increase the "
            "chance that alarm rings?"
        )

    def test_token_prompt_bytes(self):
        query = CausalQuery("nie", "decrease", {P0: 0.48, P1: 0.36})
        prompt = render_prompt(token_story(), query)
        assert prompt == (
            "Imagine a self-contained, hypothetical world with only the "
            "following conditions, and without any unmentioned factors or "
            "causal relationships: Rixq has a direct effect on zuph. Zuph has "
            "a direct effect on xevu. When rixq does not occur, the "
            "probability that xevu occurs is 48%. When rixq occurs, the "
            "probability that xevu occurs is 36%. If rixq occurs, would it "
            "decrease the chance that xevu occurs?"
        )

    def test_negative_zero_never_rendered(self):
        query = CausalQuery("ate", "increase", {P0: 0.5, P1: 0.5})
        estimand, estimate = compute_estimand(query)
        trace = render_causalcot_trace(ALARM_STORY, query, estimand, estimate)
        assert "-0.00" not in trace
        assert "<answer> No </answer>" in trace


class TestGeneration:
    def test_same_seed_same_item(self):
        for split in ("commonsense", "antisense", "nonsense"):
            assert generate_cladder_item(11, split=split) == generate_cladder_item(
                11, split=split
            )

    def test_items_validate(self):
        for seed in range(60):
            for split in ("commonsense", "antisense", "nonsense"):
                item = generate_cladder_item(seed, split=split)
                item.validate()
                assert item.gold_answer in ("Yes", "No")
                assert item.gold_cot.startswith("<think>")
                assert item.gold_cot.endswith("</answer>")

    def test_item_id_round_trip(self):
        item = generate_cladder_item(123, split="antisense")
        template, split, seed = parse_item_id(item.id)
        assert split == "antisense"
        assert seed == 123
        assert generate_cladder_item(seed, template=template, split=split) == item

    def test_story_recovered_from_id(self):
        for seed in (0, 5, 77):
            for split in ("commonsense", "antisense", "nonsense"):
                item = generate_cladder_item(seed, split=split)
                story = story_for_item(item.id)
                for var in story.variables():
                    assert var.name.lower() in item.prompt.lower()

    def test_variables_cover_three_events(self):
        item = generate_cladder_item(42, split="commonsense")
        names = {v.name for v in variables_for_item(item)}
        assert len(names) == 3

    def test_probabilities_on_grid_and_separated(self):
        for seed in range(200):
            item = generate_cladder_item(seed, split="commonsense")
            query = query_for_item(item.id)
            p1 = query.given_data[P1]
            assert abs(p1 * 100 - round(p1 * 100)) < 1e-9
            assert 0.02 <= p1 <= 0.98
            if query.query_type == "conditional":
                assert p1 >= 0.03
            else:
                p0 = query.given_data[P0]
                assert 0.02 <= p0 <= 0.98
                assert abs(p1 - p0) >= 0.03 - 1e-9

    def test_trace_matches_query(self):
        item = generate_cladder_item(7, split="commonsense")
        query = query_for_item(item.id)
        estimand, estimate = compute_estimand(query)
        story = story_for_item(item.id)
        assert item.gold_cot == render_causalcot_trace(story, query, estimand, estimate)
        assert item.gold_answer == decide_answer(estimate, query.polarity)

    def test_answer_balance(self):
        yes = sum(
            generate_cladder_item(seed, split="commonsense").gold_answer == "Yes"
            for seed in range(1000)
        )
        assert 0.4 <= yes / 1000 <= 0.6

    def test_antisense_mixes_stories_role_preserving(self):
        for seed in (3, 9, 31):
            story = story_for_item(generate_cladder_item(seed, split="antisense").id)
            origins = set()
            for index, (px, pv2, py) in enumerate(STORY_POOL):
                if story.x.name == px.name:
                    origins.add(index)
                if story.v2.name == pv2.name:
                    origins.add(index)
                if story.y.name == py.name:
                    origins.add(index)
            # every role surface comes from the pool, in the same role
            pool_x = {px.name for px, _, _ in STORY_POOL}
            pool_v2 = {pv2.name for _, pv2, _ in STORY_POOL}
            pool_y = {py.name for _, _, py in STORY_POOL}
            assert story.x.name in pool_x
            assert story.v2.name in pool_v2
            assert story.y.name in pool_y
            assert len(origins) == 3

    def test_nonsense_names_are_not_words(self):
        for seed in range(50):
            item = generate_cladder_item(seed, split="nonsense")
            story = story_for_item(item.id)
            for var in story.variables():
                assert not is_english(var.name)
                assert 3 <= len(var.name) <= 6

    def test_unknown_split_rejected(self):
        with pytest.raises(GenerationError):
            generate_cladder_item(0, split="sideways")

    def test_unknown_template_rejected(self):
        with pytest.raises(GenerationError):
            generate_cladder_item(0, template="fork", split="commonsense")

    def test_bad_item_id_rejected(self):
        with pytest.raises(ParseError):
            parse_item_id("prontoqa-commonsense-h3-d2-p-00000001")
