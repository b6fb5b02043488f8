import json
import subprocess
import sys

import pytest

from adaptenv.cli import run_cli
from adaptenv.registry import default_registry

REGISTRY = default_registry()


def run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def records(text):
    return [json.loads(line) for line in text.strip().splitlines()]


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    descriptors = records(out)
    assert len(descriptors) == 16
    assert {d["env_id"] for d in descriptors} == set(REGISTRY.env_ids())


def test_gen_sorting_difficulty_zero(capsys):
    code, out, _ = run(capsys, "gen", "--env", "sorting", "--difficulty", "0",
                       "--seed", "7", "-n", "1")
    assert code == 0
    [record] = records(out)
    assert record["params"]["n"] == 3
    assert record["reference_answer"]


def test_gen_multiple_and_no_reference(capsys):
    code, out, _ = run(capsys, "gen", "--env", "crt", "--difficulty", "1",
                       "-n", "3", "--no-reference")
    assert code == 0
    results = records(out)
    assert len(results) == 3
    assert all("reference_answer" not in r for r in results)
    assert len({r["prompt"] for r in results}) == 3


def test_gen_is_deterministic(capsys):
    _, first, _ = run(capsys, "gen", "--env", "sudoku", "--difficulty", "2",
                      "--seed", "5")
    _, second, _ = run(capsys, "gen", "--env", "sudoku", "--difficulty", "2",
                       "--seed", "5")
    assert first == second


def test_gen_unknown_env_is_runtime_error(capsys):
    code, _, err = run(capsys, "gen", "--env", "nope", "--difficulty", "0")
    assert code == 2
    assert "nope" in err


@pytest.mark.parametrize("env_id", REGISTRY.env_ids())
def test_gen_verify_compose(env_id, capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "--env", env_id, "--difficulty", "1",
                       "--seed", "3")
    assert code == 0
    [record] = records(out)
    problem = tmp_path / "problem.json"
    problem.write_text(json.dumps(record))
    answer = tmp_path / "answer.txt"
    answer.write_text(record["reference_answer"])
    code, out, _ = run(capsys, "verify", "--env", env_id,
                       "--problem", str(problem), "--output", str(answer))
    assert code == 0
    [verdict] = records(out)
    assert verdict["reward"] == 1.0
    assert verdict["category"] == "Exact"


def test_verify_parse_failure_is_still_success(capsys, tmp_path):
    _, out, _ = run(capsys, "gen", "--env", "sorting", "--difficulty", "0")
    [record] = records(out)
    problem = tmp_path / "problem.json"
    problem.write_text(json.dumps(record))
    answer = tmp_path / "answer.txt"
    answer.write_text("I refuse to answer.")
    code, out, _ = run(capsys, "verify", "--problem", str(problem),
                       "--output", str(answer))
    assert code == 0  # a verdict is a success, even a bad one
    [verdict] = records(out)
    assert verdict["reward"] == -1.0
    assert verdict["category"] == "ParseFailure"


def test_verify_env_mismatch(capsys, tmp_path):
    _, out, _ = run(capsys, "gen", "--env", "sorting", "--difficulty", "0")
    [record] = records(out)
    problem = tmp_path / "problem.json"
    problem.write_text(json.dumps(record))
    answer = tmp_path / "answer.txt"
    answer.write_text("1 2 3")
    code, _, err = run(capsys, "verify", "--env", "crt",
                       "--problem", str(problem), "--output", str(answer))
    assert code == 2
    assert "sorting" in err


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys)[0] == 1
    assert run(capsys, "gen", "--bogus-flag")[0] == 1
    assert run(capsys, "gen")[0] == 1  # missing required flags


def test_runtime_error_on_missing_file(capsys):
    code, _, err = run(capsys, "verify", "--problem", "/no/such/file",
                       "--output", "/no/such/file")
    assert code == 2
    assert err


def test_simulate_and_plot(capsys, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({
        "mode": "adaptive",
        "steps": 3,
        "train_size": 4,
        "oversample_size": 12,
        "rollouts_per_problem": 4,
        "master_seed": 1,
    }))
    metrics = tmp_path / "metrics.jsonl"
    code, out, _ = run(capsys, "simulate", "--config", str(config),
                       "--out", str(metrics))
    assert code == 0
    summary = records(out)[0]
    assert summary["steps"] == 3
    lines = records(metrics.read_text())
    assert len(lines) == 3
    assert all(0.0 <= line["effective_prompt_ratio"] <= 1.0 for line in lines)

    image = tmp_path / "plot.png"
    code, out, _ = run(capsys, "plot", "--metrics", str(metrics),
                       "--out", str(image))
    assert code == 0
    assert image.stat().st_size > 0


def test_simulate_rejects_bad_config(capsys, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"mode": "adaptive", "bogus": True}))
    code, _, err = run(capsys, "simulate", "--config", str(config),
                       "--out", str(tmp_path / "m.jsonl"))
    assert code == 2
    assert "bogus" in err


def test_export_testset_cli(capsys, tmp_path):
    out_file = tmp_path / "testset.jsonl"
    code, out, _ = run(capsys, "export-testset", "--envs", "crt,josephus",
                       "--per-env", "4", "--high", "1", "--seed", "2",
                       "--out", str(out_file))
    assert code == 0
    assert records(out)[0]["problems"] == 8
    problems = records(out_file.read_text())
    assert len(problems) == 8
    # stdout mode
    code, out, _ = run(capsys, "export-testset", "--envs", "crt",
                       "--per-env", "2", "--high", "0")
    assert code == 0
    assert len(records(out)) == 2


def test_manifest(capsys):
    code, out, _ = run(capsys, "manifest")
    assert code == 0
    manifests = records(out)
    assert len(manifests) == 16
    assert all("answer_grammar" in m for m in manifests)


def test_serve_stdio_subprocess(tmp_path):
    requests = (
        json.dumps({"kind": "get_stats"}) + "\n"
        + json.dumps({"kind": "get_problem", "count": 2}) + "\n"
    )
    result = subprocess.run(
        [sys.executable, "-m", "adaptenv", "serve", "--listen", "stdio"],
        input=requests, capture_output=True, text=True, timeout=60,
    )
    assert result.returncode == 0, result.stderr
    lines = result.stdout.strip().splitlines()
    assert len(lines) == 2
    stats = json.loads(lines[0])
    assert stats["status"] == "ok"
    assert len(stats["envs"]) == 16
    problems = json.loads(lines[1])["problems"]
    assert len(problems) == 2


def test_serve_writes_state_file(tmp_path):
    state_file = tmp_path / "state.aeck.json"
    requests = json.dumps({"kind": "get_problem"}) + "\n"
    result = subprocess.run(
        [sys.executable, "-m", "adaptenv", "serve",
         "--listen", "stdio", "--state", str(state_file)],
        input=requests, capture_output=True, text=True, timeout=60,
    )
    assert result.returncode == 0, result.stderr
    checkpoint = json.loads(state_file.read_text())
    assert checkpoint["magic"] == "adaptenv-checkpoint"
    assert checkpoint["counter"] > 0
