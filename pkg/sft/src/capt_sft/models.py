"""Tiny local base models and the low-rank adapter layer.

The base model's own weights are frozen the moment it is built; training
touches only the adapter matrices, and ``base_weights_sha256`` lets every run
prove that. Serving-scale hub checkpoints are documented defaults, not
something this CPU path loads.
"""

from __future__ import annotations

import hashlib
import math

import torch
from torch import nn

from .data import PAD
from .errors import ModelError

# name -> (embedding dim, recurrent hidden size)
REGISTRY: dict[str, tuple[int, int]] = {
    "tiny-char-lm": (64, 128),
}


class LoraLinear(nn.Module):
    """A frozen linear layer plus a trainable low-rank update.

    forward(x) = base(x) + (alpha / r) * dropout(x) @ A^T @ B^T, with A
    Kaiming-initialized and B zero so the wrap starts as a no-op.
    """

    def __init__(self, base: nn.Linear, rank: int, alpha: int, dropout: float):
        super().__init__()
        self.base = base
        for param in self.base.parameters():
            param.requires_grad_(False)
        self.scale = alpha / rank
        self.drop = nn.Dropout(dropout)
        self.lora_a = nn.Parameter(torch.empty(rank, base.in_features))
        self.lora_b = nn.Parameter(torch.zeros(base.out_features, rank))
        nn.init.kaiming_uniform_(self.lora_a, a=math.sqrt(5))

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.base(x) + self.scale * (self.drop(x) @ self.lora_a.T @ self.lora_b.T)


class TinyCharLM(nn.Module):
    """Character-level next-token model small enough for CPU smoke runs."""

    def __init__(self, vocab_size: int, dim: int, hidden: int):
        super().__init__()
        self.embed = nn.Embedding(vocab_size, dim, padding_idx=PAD)
        self.gru = nn.GRU(dim, hidden, batch_first=True)
        self.mid = nn.Linear(hidden, hidden)
        self.head = nn.Linear(hidden, vocab_size)

    def forward(self, ids: torch.Tensor) -> torch.Tensor:
        states, _ = self.gru(self.embed(ids))
        return self.head(torch.tanh(self.mid(states)))


def build_model(name: str, vocab_size: int) -> nn.Module:
    if name not in REGISTRY:
        local = ", ".join(sorted(REGISTRY))
        raise ModelError(
            f"unknown base model {name!r}; local models: {local}. Hub checkpoints "
            "(such as the documented default Qwen/Qwen2.5-3B-Instruct) need a GPU "
            "training stack and are not loaded by this adapter."
        )
    dim, hidden = REGISTRY[name]
    model = TinyCharLM(vocab_size, dim, hidden)
    for param in model.parameters():
        param.requires_grad_(False)
    return model


def apply_adapters(model: nn.Module, rank: int, alpha: int, dropout: float) -> nn.Module:
    """Wrap every linear layer in place; only the wraps are trainable."""
    for name, child in model.named_children():
        if isinstance(child, nn.Linear):
            setattr(model, name, LoraLinear(child, rank, alpha, dropout))
        else:
            apply_adapters(child, rank, alpha, dropout)
    return model


def adapter_state_dict(model: nn.Module) -> dict[str, torch.Tensor]:
    return {
        name: param.detach().clone()
        for name, param in model.named_parameters()
        if param.requires_grad
    }


def load_adapter_state(model: nn.Module, state: dict[str, torch.Tensor]) -> None:
    trainable = {name for name, param in model.named_parameters() if param.requires_grad}
    if set(state) != trainable:
        raise ModelError("adapter state does not match the model's adapter layout")
    with torch.no_grad():
        for name, param in model.named_parameters():
            if name in state:
                param.copy_(state[name])


def base_weights_sha256(model: nn.Module) -> str:
    """Digest of every frozen tensor, in name order."""
    digest = hashlib.sha256()
    for name, param in sorted(model.named_parameters()):
        if param.requires_grad:
            continue
        digest.update(name.encode())
        digest.update(param.detach().cpu().contiguous().numpy().tobytes())
    return digest.hexdigest()
