"""Command-line entry point: run one training job from a config file.

``capt-sft --config train.toml`` trains under ``runs/<timestamp>/``;
``capt-sft --from-manifest runs/<stamp>/manifest.json`` repeats a finished
run. Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .config import load_train_config
from .errors import SftAdapterError
from .train import train, train_from_manifest


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capt-sft",
        description="Parameter-efficient supervised fine-tuning on emitted JSONL datasets.",
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", help="TOML file of TrainConfig keys")
    source.add_argument("--from-manifest", help="manifest.json of a finished run to repeat")
    parser.add_argument("--runs-root", default="runs", help="parent directory for run output")
    parser.add_argument("--out", help="exact run directory (instead of a fresh timestamped one)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.config is not None:
            cfg = load_train_config(args.config)
            result = train(cfg, out_dir=args.out, runs_root=args.runs_root)
        else:
            result = train_from_manifest(
                args.from_manifest, out_dir=args.out, runs_root=args.runs_root
            )
    except SftAdapterError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return 1
    print(f"run_dir: {result.run_dir}")
    print(f"checkpoint: {result.checkpoint_dir}")
    print(f"curve: {result.curve_path}")
    print(f"initial_loss: {result.initial_loss}")
    print(f"final_loss: {result.final_loss}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
