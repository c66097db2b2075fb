"""Adapter layer behavior: no-op start, frozen base, hashing, registry."""

import pytest
import torch
from torch import nn

from capt_sft.errors import ModelError
from capt_sft.models import (
    LoraLinear,
    adapter_state_dict,
    apply_adapters,
    base_weights_sha256,
    build_model,
    load_adapter_state,
)


def test_wrap_starts_as_no_op():
    torch.manual_seed(0)
    base = nn.Linear(8, 8)
    wrapped = LoraLinear(base, rank=4, alpha=8, dropout=0.0)
    x = torch.randn(3, 8)
    assert torch.equal(wrapped(x), base(x))


def test_training_moves_only_the_adapter():
    torch.manual_seed(0)
    base = nn.Linear(8, 8)
    wrapped = LoraLinear(base, rank=4, alpha=8, dropout=0.0)
    weight_before = base.weight.detach().clone()
    bias_before = base.bias.detach().clone()
    b_before = wrapped.lora_b.detach().clone()
    optimizer = torch.optim.AdamW(
        [p for p in wrapped.parameters() if p.requires_grad], lr=1e-2
    )
    for _ in range(5):
        loss = (wrapped(torch.randn(4, 8)) ** 2).mean()
        optimizer.zero_grad()
        loss.backward()
        optimizer.step()
    assert torch.equal(base.weight, weight_before)
    assert torch.equal(base.bias, bias_before)
    assert not torch.equal(wrapped.lora_b, b_before)


def test_apply_adapters_wraps_every_linear():
    model = build_model("tiny-char-lm", vocab_size=50)
    apply_adapters(model, rank=8, alpha=16, dropout=0.1)
    assert isinstance(model.mid, LoraLinear)
    assert isinstance(model.head, LoraLinear)
    trainable = {name for name, p in model.named_parameters() if p.requires_grad}
    assert trainable == {"mid.lora_a", "mid.lora_b", "head.lora_a", "head.lora_b"}


def test_forward_shape():
    torch.manual_seed(0)
    model = build_model("tiny-char-lm", vocab_size=50)
    apply_adapters(model, rank=8, alpha=16, dropout=0.0)
    logits = model(torch.randint(0, 50, (2, 11)))
    assert logits.shape == (2, 11, 50)


def test_base_hash_ignores_adapter_but_sees_base():
    torch.manual_seed(0)
    model = build_model("tiny-char-lm", vocab_size=50)
    apply_adapters(model, rank=8, alpha=16, dropout=0.1)
    before = base_weights_sha256(model)
    with torch.no_grad():
        model.head.lora_b.add_(1.0)
    assert base_weights_sha256(model) == before
    with torch.no_grad():
        model.embed.weight[0, 0] += 1.0
    assert base_weights_sha256(model) != before


def test_adapter_state_round_trip():
    torch.manual_seed(0)
    model = build_model("tiny-char-lm", vocab_size=50)
    apply_adapters(model, rank=8, alpha=16, dropout=0.0)
    with torch.no_grad():
        model.head.lora_b.add_(0.5)
    state = adapter_state_dict(model)

    torch.manual_seed(0)
    clone = build_model("tiny-char-lm", vocab_size=50)
    apply_adapters(clone, rank=8, alpha=16, dropout=0.0)
    load_adapter_state(clone, state)
    x = torch.randint(0, 50, (1, 7))
    model.eval(), clone.eval()
    with torch.no_grad():
        assert torch.equal(model(x), clone(x))


def test_adapter_state_layout_mismatch():
    model = build_model("tiny-char-lm", vocab_size=50)
    apply_adapters(model, rank=8, alpha=16, dropout=0.0)
    with pytest.raises(ModelError, match="adapter layout"):
        load_adapter_state(model, {"head.lora_a": torch.zeros(1)})


def test_unknown_base_model_names_the_alternatives():
    with pytest.raises(ModelError) as err:
        build_model("Qwen/Qwen2.5-3B-Instruct", vocab_size=50)
    assert "tiny-char-lm" in str(err.value)
    assert "GPU" in str(err.value)
