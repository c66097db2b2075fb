"""The training run: deterministic adapter fine-tuning with a full audit trail.

Every run writes a loss curve (CSV), an adapter-only checkpoint, and a
manifest holding the effective config, the overrides, the dataset digest, and
the base-weight hash before and after training. Re-invoking from the manifest
reproduces the curve byte for byte.
"""

from __future__ import annotations

import dataclasses
import datetime
import json
import math
from dataclasses import dataclass
from pathlib import Path

import torch
from torch import nn

from .config import TrainConfig, config_from_manifest
from .data import (
    PAD,
    CharTokenizer,
    batch_order,
    dataset_sha256,
    load_records,
)
from .errors import TrainError
from .models import (
    REGISTRY,
    adapter_state_dict,
    apply_adapters,
    base_weights_sha256,
    build_model,
    load_adapter_state,
)

MANIFEST_NAME = "manifest.json"
CURVE_NAME = "loss_curve.csv"
CHECKPOINT_DIR = "checkpoint"

# CPU stand-in for the documented paged 32-bit AdamW; same update rule,
# no GPU paging.
OPTIMIZER_NAME = "adamw-fp32"


@dataclass(frozen=True)
class TrainResult:
    run_dir: Path
    checkpoint_dir: Path
    curve_path: Path
    manifest_path: Path
    initial_loss: float
    final_loss: float


def _fresh_run_dir(runs_root: str | Path) -> Path:
    root = Path(runs_root)
    stamp = datetime.datetime.now(datetime.timezone.utc).strftime("%Y%m%d-%H%M%S")
    for k in range(1000):
        candidate = root / (stamp if k == 0 else f"{stamp}-{k}")
        try:
            candidate.mkdir(parents=True)
        except FileExistsError:
            continue
        return candidate
    raise TrainError(f"cannot allocate a run directory under {root}")


def _lr_lambda(max_steps: int, warmup_ratio: float):
    warmup = max(1, round(warmup_ratio * max_steps))

    def factor(step: int) -> float:
        if step < warmup:
            return (step + 1) / warmup
        remaining = max(1, max_steps - warmup)
        return 0.5 * (1.0 + math.cos(math.pi * (step - warmup) / remaining))

    return factor


def _collate(encoded: list[tuple[list[int], int]]) -> tuple[torch.Tensor, torch.Tensor]:
    """Pad a batch and build next-token targets masked to completion spans."""
    width = max(len(ids) for ids, _ in encoded)
    ids = torch.full((len(encoded), width), PAD, dtype=torch.long)
    targets = torch.full((len(encoded), width), -100, dtype=torch.long)
    for row, (seq, completion_start) in enumerate(encoded):
        ids[row, : len(seq)] = torch.tensor(seq, dtype=torch.long)
        shifted = torch.tensor(seq[1:], dtype=torch.long)
        # position k predicts token k+1; supervise from the completion on
        first = max(0, completion_start - 1)
        targets[row, first : len(seq) - 1] = shifted[first:]
    return ids, targets


def _run_loop(cfg: TrainConfig, model: nn.Module, tokenizer: CharTokenizer, records) -> list[float]:
    trainable = [param for param in model.parameters() if param.requires_grad]
    optimizer = torch.optim.AdamW(
        trainable, lr=cfg.learning_rate, weight_decay=cfg.weight_decay
    )
    schedule = torch.optim.lr_scheduler.LambdaLR(
        optimizer, _lr_lambda(cfg.max_steps, cfg.warmup_ratio)
    )
    encoded = [tokenizer.encode(record.prompt, record.completion) for record in records]
    losses: list[float] = []
    model.train()
    for batch in batch_order(len(records), cfg.batch_size, cfg.max_steps, cfg.seed):
        ids, targets = _collate([encoded[row] for row in batch])
        logits = model(ids)
        loss = nn.functional.cross_entropy(
            logits[:, :-1].reshape(-1, logits.shape[-1]),
            targets[:, :-1].reshape(-1),
            ignore_index=-100,
        )
        optimizer.zero_grad()
        loss.backward()
        optimizer.step()
        schedule.step()
        losses.append(loss.item())
    return losses


def _write_curve(path: Path, losses: list[float]) -> None:
    lines = ["step,loss"]
    lines += [f"{step},{loss!r}" for step, loss in enumerate(losses, start=1)]
    path.write_text("\n".join(lines) + "\n")


def _write_checkpoint(directory: Path, cfg: TrainConfig, model, tokenizer: CharTokenizer) -> None:
    directory.mkdir()
    torch.save(adapter_state_dict(model), directory / "adapter_state.pt")
    dim, hidden = REGISTRY[cfg.base_model_name]
    (directory / "model_config.json").write_text(json.dumps({
        "base_model_name": cfg.base_model_name,
        "vocab_size": tokenizer.vocab_size,
        "dim": dim,
        "hidden": hidden,
        "adapter_rank": cfg.adapter_rank,
        "adapter_alpha": cfg.adapter_alpha,
        "adapter_dropout": cfg.adapter_dropout,
    }, indent=2) + "\n")
    (directory / "tokenizer.json").write_text(
        json.dumps(tokenizer.to_payload(), indent=2) + "\n"
    )


def train(cfg: TrainConfig, out_dir: str | Path | None = None, runs_root: str | Path = "runs") -> TrainResult:
    """Run supervised fine-tuning and write curve, checkpoint, and manifest."""
    cfg.validate()
    records = load_records(cfg.dataset_path)

    torch.manual_seed(cfg.seed)
    torch.use_deterministic_algorithms(True)
    tokenizer = CharTokenizer.from_records(records)
    try:
        model = build_model(cfg.base_model_name, tokenizer.vocab_size)
        apply_adapters(model, cfg.adapter_rank, cfg.adapter_alpha, cfg.adapter_dropout)
        hash_before = base_weights_sha256(model)
        losses = _run_loop(cfg, model, tokenizer, records)
    except (MemoryError, RuntimeError) as err:
        if isinstance(err, RuntimeError) and "memory" not in str(err).lower():
            raise
        raise TrainError(
            f"out of memory while training {cfg.base_model_name!r}; "
            "try a smaller base model (see capt_sft.models.REGISTRY)"
        ) from err
    hash_after = base_weights_sha256(model)
    if hash_after != hash_before:
        raise TrainError("base weights changed during training; adapter isolation is broken")

    run_dir = Path(out_dir) if out_dir is not None else _fresh_run_dir(runs_root)
    run_dir.mkdir(parents=True, exist_ok=True)
    curve_path = run_dir / CURVE_NAME
    _write_curve(curve_path, losses)
    checkpoint_dir = run_dir / CHECKPOINT_DIR
    _write_checkpoint(checkpoint_dir, cfg, model, tokenizer)

    manifest_path = run_dir / MANIFEST_NAME
    manifest = {
        "name": "capt-sft",
        "version": "0.1.0",
        "created": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "config": cfg.to_payload(),
        "overrides": cfg.overrides(),
        "optimizer": OPTIMIZER_NAME,
        "dataset": {
            "path": str(Path(cfg.dataset_path).resolve()),
            "records": len(records),
            "sha256": dataset_sha256(cfg.dataset_path),
        },
        "base_weights_sha256": {"before": hash_before, "after": hash_after},
        "loss": {"initial": losses[0], "final": losses[-1]},
        "curve": CURVE_NAME,
        "checkpoint": CHECKPOINT_DIR,
        "torch_version": torch.__version__,
    }
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")

    return TrainResult(
        run_dir=run_dir,
        checkpoint_dir=checkpoint_dir,
        curve_path=curve_path,
        manifest_path=manifest_path,
        initial_loss=losses[0],
        final_loss=losses[-1],
    )


def train_from_manifest(manifest_path: str | Path, out_dir: str | Path | None = None,
                        runs_root: str | Path = "runs") -> TrainResult:
    """Re-run a finished run from its manifest alone."""
    return train(config_from_manifest(manifest_path), out_dir=out_dir, runs_root=runs_root)


def load_checkpoint(run_dir: str | Path):
    """Rebuild the trained model and tokenizer from a run directory."""
    run_dir = Path(run_dir)
    cfg = config_from_manifest(run_dir / MANIFEST_NAME)
    checkpoint = run_dir / CHECKPOINT_DIR
    model_config = json.loads((checkpoint / "model_config.json").read_text())
    tokenizer = CharTokenizer.from_payload(
        json.loads((checkpoint / "tokenizer.json").read_text())
    )
    torch.manual_seed(cfg.seed)
    model = build_model(model_config["base_model_name"], model_config["vocab_size"])
    apply_adapters(
        model,
        model_config["adapter_rank"],
        model_config["adapter_alpha"],
        model_config["adapter_dropout"],
    )
    state = torch.load(checkpoint / "adapter_state.pt", weights_only=True)
    load_adapter_state(model, state)
    model.eval()
    return model, tokenizer
