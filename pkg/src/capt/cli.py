"""Command-line front end: generate, transform, emit, eval, ablate, verify-scm.

Configuration precedence is flags > config file > defaults, and every run
writes the resolved values next to its outputs as <command>.config.json so
a run is reproducible from the snapshot alone. Secrets never appear in
flags, files, or snapshots; only the environment variable name does.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys

from capt import __version__
from capt.config import parse_config
from capt.errors import CaptError, ConfigError

LOG = logging.getLogger("capt")

IDENTITY_TOL = 1e-10

GENERATE_DEFAULTS = {"n": 100, "splits": "all", "hops": None, "distractors": None}
TRANSFORM_DEFAULTS = {"mode": "random"}
EMIT_DEFAULTS = {
    "format": "cot",
    "mode": "random",
    "n": None,
    "name": "train.jsonl",
    "reassign_per_copy": 1,
}
EVAL_DEFAULTS = {
    "mode": "null",
    "prompt_mode": "direct",
    "temperature": 0.0,
    "max_in_flight": 4,
    "timeout_ms": 30000,
    "retry_max": 2,
    "in_context_file": None,
    "api_key_env": "CAPT_API_KEY",
}
ABLATE_DEFAULTS = {**EVAL_DEFAULTS, "modes": "null,order,random", "seeds": "0"}


class UsageError(Exception):
    """Bad invocation that argparse itself could not catch."""


class _JsonFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        return json.dumps(
            {"level": record.levelname.lower(), "message": record.getMessage()}
        )


def _setup_logging(level_name: str, json_logs: bool) -> None:
    level = getattr(logging, str(level_name).upper(), None)
    if not isinstance(level, int):
        raise ConfigError(f"unknown log level {level_name!r}")
    handler = logging.StreamHandler(sys.stderr)
    if json_logs:
        handler.setFormatter(_JsonFormatter())
    else:
        handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(level)


class Resolver:
    """flags > [command] section > top-level config keys > defaults."""

    def __init__(self, args: argparse.Namespace, defaults: dict):
        self.args = args
        self.defaults = defaults
        self.file_config = parse_config(args.config) if args.config else {}
        self.command = args.command

    def get(self, key: str):
        value = getattr(self.args, key, None)
        if value is not None:
            return value
        section = self.file_config.get(self.command)
        if isinstance(section, dict) and key in section:
            return section[key]
        top = self.file_config.get(key)
        if top is not None and not isinstance(top, dict):
            return top
        return self.defaults.get(key)

    def require(self, key: str, flag: str):
        value = self.get(key)
        if value is None:
            raise UsageError(f"{self.command}: {flag} is required")
        return value

    def resolved(self, keys) -> dict:
        return {key: self.get(key) for key in keys}


def _ensure_fresh(paths, force: bool) -> None:
    for path in paths:
        if os.path.exists(path) and not force:
            raise ConfigError(
                f"output already exists: {path} (pass --force to overwrite)"
            )


def _write_snapshot(out_dir: str, command: str, resolved: dict) -> None:
    os.makedirs(out_dir, exist_ok=True)
    snapshot = {"command": command, "version": __version__, **resolved}
    path = os.path.join(out_dir, f"{command}.config.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(snapshot, fh, indent=2, ensure_ascii=False)
        fh.write("\n")


def _emit_result(payload: dict, json_logs: bool) -> None:
    if json_logs:
        print(json.dumps(payload, ensure_ascii=False))
        return
    for key, value in payload.items():
        print(f"{key}: {value}")


def _split_list(value) -> list[str]:
    if isinstance(value, str):
        return [part.strip() for part in value.split(",") if part.strip()]
    raise ConfigError(f"expected a comma-separated string, got {value!r}")


# === commands ===


def _cmd_generate(args: argparse.Namespace) -> int:
    from capt.cladder import generate_cladder_item
    from capt.items import SPLITS, write_items
    from capt.prontoqa import ChainSpec, generate_prontoqa_item

    resolver = Resolver(args, {**GENERATE_DEFAULTS, "seed": 0})
    out_dir = resolver.require("out", "--out")
    dataset = args.dataset
    n = int(resolver.get("n"))
    seed = int(resolver.get("seed"))
    splits_value = resolver.get("splits")
    splits = list(SPLITS) if splits_value == "all" else _split_list(splits_value)
    for split in splits:
        if split not in SPLITS:
            raise ConfigError(f"unknown split {split!r}")
    hops = resolver.get("hops")
    distractors = resolver.get("distractors")

    items = []
    for split in splits:
        for k in range(n):
            if dataset == "cladder":
                items.append(generate_cladder_item(seed=seed + k, split=split))
            else:
                spec = ChainSpec(
                    hops=int(hops) if hops is not None else 1 + k % 5,
                    distractors=int(distractors) if distractors is not None
                    else k % 4,
                )
                items.append(
                    generate_prontoqa_item(seed=seed + k, spec=spec, split=split)
                )
    items.sort(key=lambda item: item.id)

    items_path = os.path.join(out_dir, "items.jsonl")
    manifest_file = os.path.join(out_dir, "items.manifest.json")
    _ensure_fresh([items_path, manifest_file], args.force)
    os.makedirs(out_dir, exist_ok=True)
    write_items(items_path, items)
    ids = [item.id for item in items]
    manifest = {
        "generator": {"name": "capt", "version": __version__},
        "dataset": dataset,
        "seed": seed,
        "n_per_split": n,
        "splits": splits,
        "total": len(items),
        "ids_sha256": hashlib.sha256("\n".join(ids).encode("utf-8")).hexdigest(),
    }
    with open(manifest_file, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    _write_snapshot(
        out_dir, "generate",
        {"dataset": dataset, "seed": seed, "n": n, "splits": splits,
         "hops": hops, "distractors": distractors},
    )
    LOG.info("wrote %d items to %s", len(items), items_path)
    _emit_result({"items": len(items), "path": items_path}, args.json_logs)
    return 0


def _cmd_transform(args: argparse.Namespace) -> int:
    from capt.items import read_items
    from capt.rng import fold_label
    from capt.symbolize import (
        apply_assignment,
        assign_letters,
        symbolize_deterministic,
        to_external_record,
    )

    resolver = Resolver(args, {**TRANSFORM_DEFAULTS, "seed": 0})
    out_dir = resolver.require("out", "--out")
    items_path = resolver.require("items", "--items")
    mode = resolver.get("mode")
    seed = int(resolver.get("seed"))
    if mode not in ("order", "random"):
        raise ConfigError(f"transform mode must be order or random, got {mode!r}")

    items = sorted(read_items(items_path), key=lambda item: item.id)
    out_path = os.path.join(out_dir, "transformed.jsonl")
    _ensure_fresh([out_path], args.force)
    os.makedirs(out_dir, exist_ok=True)
    with open(out_path, "w", encoding="utf-8") as fh:
        for item in items:
            transformed = symbolize_deterministic(item)
            assign_seed = fold_label(seed, "transform-assign", item.id)
            assignment = assign_letters(transformed.table, mode, assign_seed)
            finalized = apply_assignment(transformed, assignment)
            fh.write(json.dumps(to_external_record(finalized),
                                ensure_ascii=False) + "\n")
    _write_snapshot(
        out_dir, "transform",
        {"items": items_path, "mode": mode, "seed": seed},
    )
    LOG.info("transformed %d items to %s", len(items), out_path)
    _emit_result({"items": len(items), "path": out_path}, args.json_logs)
    return 0


def _cmd_emit(args: argparse.Namespace) -> int:
    from capt.emit import emit_sft
    from capt.items import read_items

    resolver = Resolver(args, {**EMIT_DEFAULTS, "seed": 0})
    out_dir = resolver.require("out", "--out")
    items_path = resolver.require("items", "--items")
    items = read_items(items_path)
    n = resolver.get("n")
    n_samples = int(n) if n is not None else len(items)
    name = resolver.get("name")
    seed = int(resolver.get("seed"))
    fmt = resolver.get("format")
    mode = resolver.get("mode")
    reassign = int(resolver.get("reassign_per_copy"))

    target = os.path.join(out_dir, name)
    from capt.emit import manifest_path

    _ensure_fresh([target, manifest_path(target)], args.force)
    os.makedirs(out_dir, exist_ok=True)
    manifest = emit_sft(items, target, format=fmt, capt_mode=mode, seed=seed,
                        n_samples=n_samples, reassign_per_copy=reassign)
    _write_snapshot(
        out_dir, "emit",
        {"items": items_path, "format": fmt, "mode": mode, "seed": seed,
         "n": n_samples, "name": name, "reassign_per_copy": reassign},
    )
    LOG.info("emitted %d records to %s", manifest["records"], target)
    _emit_result({"records": manifest["records"], "path": target,
                  "ids_sha256": manifest["ids_sha256"]}, args.json_logs)
    return 0


def _endpoint_config(resolver: Resolver):
    from capt.evalharness import EndpointConfig

    return EndpointConfig(
        base_url=resolver.require("endpoint_url", "--endpoint-url"),
        model_name=resolver.require("model", "--model"),
        api_key_env=resolver.get("api_key_env"),
        temperature=float(resolver.get("temperature")),
        max_in_flight=int(resolver.get("max_in_flight")),
        timeout_ms=int(resolver.get("timeout_ms")),
        retry_max=int(resolver.get("retry_max")),
        prompt_mode=resolver.get("prompt_mode"),
        in_context_file=resolver.get("in_context_file"),
    )


def _eval_snapshot(resolver: Resolver, extra: dict) -> dict:
    keys = ("items", "endpoint_url", "model", "api_key_env", "temperature",
            "max_in_flight", "timeout_ms", "retry_max", "prompt_mode",
            "in_context_file")
    return {**resolver.resolved(keys), **extra}


def _cmd_eval(args: argparse.Namespace) -> int:
    from capt.evalharness import evaluate
    from capt.items import read_items

    resolver = Resolver(args, {**EVAL_DEFAULTS, "seed": 0})
    out_dir = resolver.require("out", "--out")
    items = read_items(resolver.require("items", "--items"))
    cfg = _endpoint_config(resolver)
    mode = resolver.get("mode")
    seed = int(resolver.get("seed"))
    _ensure_fresh([os.path.join(out_dir, "eval.config.json")], args.force)
    os.makedirs(out_dir, exist_ok=True)
    _write_snapshot(out_dir, "eval",
                    _eval_snapshot(resolver, {"mode": mode, "seed": seed}))
    report = evaluate(cfg, items, mode, seed, out_dir=out_dir)
    payload = {
        "mode": mode,
        "seed": seed,
        "std": report.std,
        **{score.split: score.accuracy for score in report.scores},
    }
    _emit_result(payload, args.json_logs)
    return 0


def _cmd_ablate(args: argparse.Namespace) -> int:
    from capt.evalharness import run_ablation
    from capt.items import read_items

    resolver = Resolver(args, {**ABLATE_DEFAULTS, "seed": 0})
    out_dir = resolver.require("out", "--out")
    items = read_items(resolver.require("items", "--items"))
    cfg = _endpoint_config(resolver)
    modes = _split_list(resolver.get("modes"))
    try:
        seeds = [int(s) for s in _split_list(resolver.get("seeds"))]
    except ValueError as exc:
        raise ConfigError(f"bad --seeds value: {exc}") from exc
    summary_path = os.path.join(out_dir, "summary.csv")
    _ensure_fresh([summary_path], args.force)
    os.makedirs(out_dir, exist_ok=True)
    _write_snapshot(out_dir, "ablate",
                    _eval_snapshot(resolver, {"modes": modes, "seeds": seeds}))
    grid = run_ablation(cfg, items, modes, seeds, out_dir=out_dir)
    for (mode, seed), report in grid.items():
        LOG.info("mode=%s seed=%d std=%.2f", mode, seed, report.std)
    _emit_result({"cells": len(grid), "summary": summary_path}, args.json_logs)
    return 0


def _cmd_verify_scm(args: argparse.Namespace) -> int:
    from capt.scm.identities import random_scm, verify_capt_identities

    resolver = Resolver(args, {"seed": 0})
    shape = args.shape
    seed = int(resolver.get("seed"))
    scm, roles = random_scm(shape, seed)
    report = verify_capt_identities(scm, roles)
    payload = {
        "shape": shape,
        "seed": seed,
        "max_discrepancy": report.max_discrepancy(),
        **{name: gap for name, gap in report.discrepancies.items()},
    }
    if report.naive_gap is not None:
        payload["naive_adjustment_gap"] = report.naive_gap
    out_dir = resolver.get("out")
    if out_dir:
        _write_snapshot(out_dir, "verify-scm", {"shape": shape, "seed": seed})
    _emit_result(payload, args.json_logs)
    if report.max_discrepancy() > IDENTITY_TOL:
        LOG.error("identity discrepancy %.3e exceeds %.0e",
                  report.max_discrepancy(), IDENTITY_TOL)
        return 1
    return 0


# === parser ===


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--config", default=None,
                        help="key=value config file; flags win over it")
    common.add_argument("--force", action="store_true",
                        help="overwrite existing outputs")
    common.add_argument("--log-level", default=None,
                        choices=["debug", "info", "warning", "error"])
    common.add_argument("--json-logs", action="store_true",
                        help="machine-readable output and logs")

    parser = argparse.ArgumentParser(
        prog="capt",
        description="Generate, transform, emit, and evaluate reasoning datasets.",
    )
    parser.add_argument("--version", action="version",
                        version=f"capt {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common],
                       help="generate benchmark items")
    p.add_argument("dataset", choices=["cladder", "prontoqa"])
    p.add_argument("--n", type=int, default=None, help="items per split")
    p.add_argument("--splits", default=None,
                   help='"all" or comma-separated split names')
    p.add_argument("--hops", type=int, default=None)
    p.add_argument("--distractors", type=int, default=None)
    p.set_defaults(run=_cmd_generate)

    p = sub.add_parser("transform", parents=[common],
                       help="symbolize items and assign letter codes")
    p.add_argument("--items", default=None, help="items JSONL path")
    p.add_argument("--mode", default=None, choices=["order", "random"])
    p.set_defaults(run=_cmd_transform)

    p = sub.add_parser("emit", parents=[common],
                       help="emit a supervised fine-tuning dataset")
    p.add_argument("--items", default=None)
    p.add_argument("--format", default=None, choices=["cot", "answer_only"])
    p.add_argument("--mode", default=None, choices=["null", "order", "random"])
    p.add_argument("--n", type=int, default=None, help="records to sample")
    p.add_argument("--name", default=None, help="output file name")
    p.add_argument("--reassign-per-copy", dest="reassign_per_copy", type=int,
                   default=None)
    p.set_defaults(run=_cmd_emit)

    for name, runner in (("eval", _cmd_eval), ("ablate", _cmd_ablate)):
        p = sub.add_parser(name, parents=[common],
                           help="query an endpoint and score the splits")
        p.add_argument("--endpoint-url", dest="endpoint_url", default=None)
        p.add_argument("--model", default=None)
        p.add_argument("--items", default=None)
        p.add_argument("--prompt-mode", dest="prompt_mode", default=None,
                       choices=["direct", "cot", "cot_ic"])
        p.add_argument("--temperature", type=float, default=None)
        p.add_argument("--max-in-flight", dest="max_in_flight", type=int,
                       default=None)
        p.add_argument("--timeout-ms", dest="timeout_ms", type=int, default=None)
        p.add_argument("--retry-max", dest="retry_max", type=int, default=None)
        p.add_argument("--in-context-file", dest="in_context_file", default=None)
        p.add_argument("--api-key-env", dest="api_key_env", default=None)
        if name == "eval":
            p.add_argument("--mode", default=None,
                           choices=["null", "order", "random"])
        else:
            p.add_argument("--modes", default=None,
                           help="comma-separated capt modes")
            p.add_argument("--seeds", default=None, help="comma-separated seeds")
        p.set_defaults(run=runner)

    p = sub.add_parser("verify-scm", parents=[common],
                       help="verify debiasing identities by exact enumeration")
    p.add_argument("--shape", required=True, choices=["fig1a", "fig1b", "fig1d"])
    p.set_defaults(run=_cmd_verify_scm)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        resolver = Resolver(args, {})
        _setup_logging(resolver.get("log_level") or "info",
                       bool(args.json_logs))
        return args.run(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except CaptError as exc:
        if args.json_logs:
            message = json.dumps(
                {"level": "error", "error": type(exc).__name__,
                 "message": str(exc)}
            )
        else:
            message = f"error: {type(exc).__name__}: {exc}"
        print(message, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
