"""Command-line behavior: exit codes, snapshots, precedence, pipelines."""

import json

import pytest

from capt.cli import main
from capt.emit import validate_sft
from capt.evalharness import transform_prompt
from capt.items import read_items
from capt.testing import MockChatServer


def run(argv):
    return main(argv)


# --- exit protocol ---


def test_version_flag():
    with pytest.raises(SystemExit) as excinfo:
        run(["--version"])
    assert excinfo.value.code == 0


def test_unknown_flag_is_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        run(["generate", "cladder", "--frobnicate"])
    assert excinfo.value.code == 2


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        run([])
    assert excinfo.value.code == 2


def test_missing_required_value_is_usage_error(capsys):
    assert run(["transform", "--out", "/tmp/x"]) == 2
    assert "--items is required" in capsys.readouterr().err


def test_domain_error_is_exit_one(tmp_path, capsys):
    out = str(tmp_path / "gen")
    assert run(["generate", "cladder", "--n", "2", "--out", out]) == 0
    capsys.readouterr()
    assert run(["generate", "cladder", "--n", "2", "--out", out]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error: ConfigError")
    assert "--force" in err


def test_domain_error_json_logs(tmp_path, capsys):
    out = str(tmp_path / "gen")
    assert run(["generate", "cladder", "--n", "1", "--out", out]) == 0
    capsys.readouterr()
    assert run(["generate", "cladder", "--n", "1", "--out", out,
                "--json-logs"]) == 1
    payload = json.loads(capsys.readouterr().err.strip())
    assert payload["level"] == "error"
    assert payload["error"] == "ConfigError"


def test_force_allows_overwrite(tmp_path):
    out = str(tmp_path / "gen")
    assert run(["generate", "cladder", "--n", "1", "--out", out]) == 0
    assert run(["generate", "cladder", "--n", "1", "--out", out,
                "--force"]) == 0


# --- generate ---


def test_generate_writes_items_manifest_snapshot(tmp_path):
    out = tmp_path / "gen"
    assert run(["generate", "cladder", "--n", "100", "--seed", "0",
                "--splits", "all", "--out", str(out)]) == 0
    items = read_items(str(out / "items.jsonl"))
    assert len(items) == 300
    assert {item.split for item in items} == {
        "commonsense", "antisense", "nonsense",
    }
    manifest = json.loads((out / "items.manifest.json").read_text())
    assert manifest["total"] == 300
    assert manifest["n_per_split"] == 100
    assert len(manifest["ids_sha256"]) == 64
    snapshot = json.loads((out / "generate.config.json").read_text())
    assert snapshot["command"] == "generate"
    assert snapshot["dataset"] == "cladder"
    assert snapshot["n"] == 100
    assert snapshot["seed"] == 0


def test_generate_is_reproducible(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    for out in (first, second):
        assert run(["generate", "prontoqa", "--n", "6", "--seed", "3",
                    "--out", str(out)]) == 0
    assert (first / "items.jsonl").read_bytes() == \
        (second / "items.jsonl").read_bytes()


def test_generate_single_split_and_fixed_spec(tmp_path):
    out = tmp_path / "gen"
    assert run(["generate", "prontoqa", "--n", "4", "--splits", "nonsense",
                "--hops", "2", "--distractors", "1", "--out", str(out)]) == 0
    items = read_items(str(out / "items.jsonl"))
    assert len(items) == 4
    assert all(item.split == "nonsense" for item in items)
    assert all("-h2-d1-" in item.id for item in items)


def test_generate_rejects_unknown_split(tmp_path, capsys):
    assert run(["generate", "cladder", "--n", "1", "--splits", "weird",
                "--out", str(tmp_path / "g")]) == 1
    assert "unknown split" in capsys.readouterr().err


# --- config file precedence ---


def test_flags_beat_config_file_beat_defaults(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text('[generate]\nn = 2\nseed = 5\n')
    out = tmp_path / "gen"
    assert run(["generate", "cladder", "--config", str(cfg), "--n", "3",
                "--out", str(out)]) == 0
    snapshot = json.loads((out / "generate.config.json").read_text())
    assert snapshot["n"] == 3        # flag wins
    assert snapshot["seed"] == 5     # file fills the gap
    assert snapshot["splits"] == ["commonsense", "antisense", "nonsense"]
    items = read_items(str(out / "items.jsonl"))
    assert len(items) == 9


def test_top_level_config_keys_apply(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text("seed = 11\n")
    out = tmp_path / "gen"
    assert run(["generate", "cladder", "--config", str(cfg), "--n", "1",
                "--out", str(out)]) == 0
    snapshot = json.loads((out / "generate.config.json").read_text())
    assert snapshot["seed"] == 11


# --- transform ---


def test_transform_external_records(tmp_path):
    gen = tmp_path / "gen"
    assert run(["generate", "cladder", "--n", "2", "--out", str(gen)]) == 0
    tx = tmp_path / "tx"
    assert run(["transform", "--items", str(gen / "items.jsonl"),
                "--mode", "random", "--seed", "3", "--out", str(tx)]) == 0
    lines = (tx / "transformed.jsonl").read_text().splitlines()
    assert len(lines) == 6
    for line in lines:
        record = json.loads(line)
        assert set(record) == {"source_id", "symbol_table", "sym_prompt",
                               "sym_cot", "gold_answer", "assignment"}
        placeholders = {entry["placeholder"] for entry in record["symbol_table"]}
        assert set(record["assignment"]["mapping"]) == placeholders
        assert record["assignment"]["mode"] == "random"
        for entry in record["symbol_table"]:
            assert entry["name"] not in record["sym_prompt"]
    ids = [json.loads(line)["source_id"] for line in lines]
    assert ids == sorted(ids)


# --- emit ---


def test_emit_pipeline_and_validation(tmp_path):
    gen = tmp_path / "gen"
    assert run(["generate", "prontoqa", "--n", "3", "--out", str(gen)]) == 0
    sft = tmp_path / "sft"
    assert run(["emit", "--items", str(gen / "items.jsonl"),
                "--format", "cot", "--mode", "order", "--seed", "7",
                "--n", "5", "--name", "train.jsonl", "--out", str(sft)]) == 0
    assert validate_sft(str(sft / "train.jsonl")) == []
    manifest = json.loads((sft / "train.manifest.json").read_text())
    assert manifest["records"] == 5
    assert manifest["capt_mode"] == "order"
    snapshot = json.loads((sft / "emit.config.json").read_text())
    assert snapshot["command"] == "emit"
    assert snapshot["n"] == 5


# --- eval and ablate ---


def eval_fixture(tmp_path, per_split=2):
    gen = tmp_path / "gen"
    assert run(["generate", "cladder", "--n", str(per_split),
                "--out", str(gen)]) == 0
    items = read_items(str(gen / "items.jsonl"))
    replies = {
        item.prompt: f"<answer> {item.gold_answer} </answer>" for item in items
    }
    return gen, items, replies


def test_eval_against_mock(tmp_path, capsys):
    gen, items, replies = eval_fixture(tmp_path)
    out = tmp_path / "report"
    with MockChatServer(replies=replies) as server:
        code = run(["eval", "--endpoint-url", server.base_url,
                    "--model", "demo", "--items", str(gen / "items.jsonl"),
                    "--mode", "null", "--seed", "0", "--out", str(out),
                    "--json-logs"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert payload["std"] == 0.0
    assert payload["commonsense"] == 100.0
    snapshot = json.loads((out / "eval.config.json").read_text())
    assert snapshot["model"] == "demo"
    assert snapshot["api_key_env"] == "CAPT_API_KEY"
    run_dirs = [p for p in out.iterdir() if p.name.startswith("run-")]
    assert len(run_dirs) == 1
    assert (run_dirs[0] / "report.json").exists()


def test_eval_capt_mode_transforms_requests(tmp_path):
    gen, items, _ = eval_fixture(tmp_path)
    replies = {
        transform_prompt(item, "order", 0):
            f"<answer> {item.gold_answer} </answer>"
        for item in items
    }
    out = tmp_path / "report"
    with MockChatServer(replies=replies) as server:
        code = run(["eval", "--endpoint-url", server.base_url,
                    "--model", "demo", "--items", str(gen / "items.jsonl"),
                    "--mode", "order", "--seed", "0", "--out", str(out)])
    assert code == 0


def test_ablate_grid_csvs(tmp_path, capsys):
    gen, items, _ = eval_fixture(tmp_path)
    replies = {}
    for mode in ("null", "order"):
        for item in items:
            replies[transform_prompt(item, mode, 0)] = \
                f"<answer> {item.gold_answer} </answer>"
    out = tmp_path / "grid"
    with MockChatServer(replies=replies) as server:
        code = run(["ablate", "--endpoint-url", server.base_url,
                    "--model", "demo", "--items", str(gen / "items.jsonl"),
                    "--modes", "null,order", "--seeds", "0",
                    "--out", str(out)])
    assert code == 0
    summary = (out / "summary.csv").read_text().splitlines()
    assert summary[0] == "mode,seed,split,accuracy,std"
    assert len(summary) == 1 + 2 * 3
    assert (out / "accuracy_by_mode.csv").exists()
    assert (out / "ablate.config.json").exists()


# --- verify-scm ---


def test_verify_scm_ok(capsys):
    assert run(["verify-scm", "--shape", "fig1d", "--seed", "5",
                "--json-logs"]) == 0
    payload = json.loads(capsys.readouterr().out.strip())
    assert payload["shape"] == "fig1d"
    assert payload["max_discrepancy"] <= 1e-10
    assert "eq5" in payload and "eq2" in payload


def test_verify_scm_reports_confounding_gap(capsys):
    assert run(["verify-scm", "--shape", "fig1b", "--seed", "8",
                "--json-logs"]) == 0
    payload = json.loads(capsys.readouterr().out.strip())
    assert payload["naive_adjustment_gap"] == pytest.approx(0.0482, abs=5e-4)
    assert payload["eq3"] <= 1e-10
