import io
import json
import random

import pytest

from adaptenv.errors import (
    DeduplicationExhausted,
    MalformedCheckpoint,
    UnsupportedVersion,
)
from adaptenv.protocol import (
    ProtocolServer,
    export_testset,
    restore_checkpoint,
    save_checkpoint,
    serve_stdio,
)
from adaptenv.registry import default_registry
from adaptenv.rng import SeedSequencer
from adaptenv.scheduler import (
    SchedulerConfig,
    init_state,
    record_outcomes,
    sample_task,
)
from adaptenv.types import EnvironmentDescriptor

REGISTRY = default_registry()


def fresh_state(env_ids=("a", "b")):
    return init_state(env_ids, SchedulerConfig())


# --- checkpoints ---------------------------------------------------------------


def test_round_trip_fresh_state():
    state = fresh_state()
    sequencer = SeedSequencer(7, counter=13)
    data = save_checkpoint(state, sequencer)
    restored, restored_sequencer = restore_checkpoint(data)
    assert restored.windows == state.windows
    assert restored.config == state.config
    assert restored_sequencer.master_seed == 7
    assert restored_sequencer.counter == 13


def test_identical_states_identical_bytes():
    a = save_checkpoint(fresh_state(), SeedSequencer(1))
    b = save_checkpoint(fresh_state(), SeedSequencer(1))
    assert a == b


def test_advanced_state_round_trips():
    state = fresh_state()
    for _ in range(5 * 8):
        window = state.windows["a"]
        record_outcomes(state, "a", window.high, [1.0] * 16)
    window = state.windows["a"]
    assert (window.low, window.high) == (2, 5)
    restored, _ = restore_checkpoint(save_checkpoint(state, SeedSequencer(0)))
    assert (restored.windows["a"].low, restored.windows["a"].high) == (2, 5)


def test_save_restore_save_is_idempotent():
    state = fresh_state()
    record_outcomes(state, "b", 0, [1.0, 0.0, 1.0])
    first = save_checkpoint(state, SeedSequencer(3, counter=9))
    second = save_checkpoint(*restore_checkpoint(first))
    assert first == second


def test_sampling_continues_after_restore():
    state = fresh_state()
    sequencer = SeedSequencer(5)
    before = [sample_task(state, sequencer.next("sample_task")) for _ in range(3)]
    data = save_checkpoint(state, sequencer)
    continued = [sample_task(state, sequencer.next("sample_task")) for _ in range(3)]
    restored_state, restored_sequencer = restore_checkpoint(data)
    replayed = [
        sample_task(restored_state, restored_sequencer.next("sample_task"))
        for _ in range(3)
    ]
    assert replayed == continued
    assert replayed != before


def test_malformed_checkpoints():
    state = fresh_state()
    data = save_checkpoint(state, SeedSequencer(0))
    with pytest.raises(MalformedCheckpoint):
        restore_checkpoint(data[: len(data) // 2])  # truncated
    with pytest.raises(MalformedCheckpoint):
        restore_checkpoint(b"not json at all")
    with pytest.raises(MalformedCheckpoint):
        restore_checkpoint(b'{"version": 1}')  # no magic
    record = json.loads(data)
    record["version"] += 1
    with pytest.raises(UnsupportedVersion):
        restore_checkpoint(json.dumps(record).encode())
    record = json.loads(data)
    del record["envs"]
    with pytest.raises(MalformedCheckpoint):
        restore_checkpoint(json.dumps(record).encode())


# --- export --------------------------------------------------------------------


def test_export_cyclic_difficulties_and_dedupe():
    dataset = export_testset(REGISTRY, ["crt", "josephus"], per_env=5,
                             d_low=0, d_high=1, seed=3)
    assert len(dataset) == 10
    for env_id in ("crt", "josephus"):
        subset = [inst for inst in dataset if inst.env_id == env_id]
        assert [inst.difficulty for inst in subset] == [0, 1, 0, 1, 0]
        prompts = [inst.prompt for inst in subset]
        assert len(set(prompts)) == len(prompts)


def test_export_single_problem_starts_at_low():
    dataset = export_testset(REGISTRY, ["crt"], per_env=1, d_low=2, d_high=7, seed=0)
    assert len(dataset) == 1
    assert dataset[0].difficulty == 2


def test_export_deterministic():
    a = export_testset(REGISTRY, ["sorting"], per_env=6, d_low=0, d_high=2, seed=11)
    b = export_testset(REGISTRY, ["sorting"], per_env=6, d_low=0, d_high=2, seed=11)
    assert a == b
    c = export_testset(REGISTRY, ["sorting"], per_env=6, d_low=0, d_high=2, seed=12)
    assert a != c


def test_export_validation():
    with pytest.raises(ValueError):
        export_testset(REGISTRY, ["crt"], per_env=0, d_low=0, d_high=1, seed=0)
    with pytest.raises(ValueError):
        export_testset(REGISTRY, ["crt"], per_env=1, d_low=3, d_high=1, seed=0)


def test_export_exhaustion_on_constant_generator():
    registry = default_registry()
    descriptor = EnvironmentDescriptor(
        "constant", "Constant", "logic-puzzle", 10, True, "binary"
    )
    registry.register_procedures(
        descriptor,
        generator=lambda d, rng: ({}, "always the same prompt", "42"),
        verifier=lambda instance, output: None,
    )
    with pytest.raises(DeduplicationExhausted):
        export_testset(registry, ["constant"], per_env=2, d_low=0, d_high=5, seed=0)


# --- server --------------------------------------------------------------------


def make_server(**kwargs):
    state = init_state(
        REGISTRY.env_ids(),
        SchedulerConfig(),
        max_difficulty={
            e: REGISTRY.get(e).max_supported_difficulty for e in REGISTRY.env_ids()
        },
    )
    return ProtocolServer(REGISTRY, state, SeedSequencer(0), **kwargs)


def call(server, **request):
    return json.loads(server.handle_line(json.dumps(request)))


def test_get_problem_then_submit_updates_stats():
    server = make_server()
    response = call(server, kind="get_problem", count=1)
    assert response["status"] == "ok"
    [problem] = response["problems"]
    assert problem["difficulty"] == 0  # fresh windows
    assert "reference_answer" not in problem
    assert problem["prompt"]
    ack = call(server, kind="submit_results",
               problem_id=problem["problem_id"], rewards=[1.0] * 16)
    assert ack["status"] == "ok"
    assert ack["counted"] is True
    stats = call(server, kind="get_stats")
    window = stats["envs"][problem["env_id"]]
    assert window["attempted"] == 16
    assert window["correct"] == 16
    assert stats["problems_issued"] == 1
    assert stats["problems_scored"] == 1
    assert stats["effective_prompt_ratio"] == 0.0  # uniform rewards


def test_include_reference_flag():
    server = make_server(include_reference=True)
    response = call(server, kind="get_problem")
    assert "reference_answer" in response["problems"][0]


def test_error_responses_keep_session_alive():
    server = make_server()
    assert call(server, kind="submit_results", problem_id="nope",
                rewards=[1.0])["code"] == "unknown_problem_id"
    assert json.loads(server.handle_line("{broken"))["code"] == "malformed_request"
    assert call(server, kind="frobnicate")["code"] == "malformed_request"
    assert call(server, kind="get_problem", count=-1)["code"] == "malformed_request"
    assert call(server, kind="submit_results", problem_id="x",
                rewards=[2.0])["code"] == "malformed_request"
    assert call(server, kind="export_testset", envs=["nope"], per_env=1,
                difficulty_low=0, difficulty_high=1, seed=0)["code"] == "unknown_env"
    # still serving
    assert call(server, kind="get_stats")["status"] == "ok"


def test_problem_ids_are_single_use():
    server = make_server()
    [problem] = call(server, kind="get_problem")["problems"]
    assert call(server, kind="submit_results", problem_id=problem["problem_id"],
                rewards=[0.0])["status"] == "ok"
    again = call(server, kind="submit_results", problem_id=problem["problem_id"],
                 rewards=[0.0])
    assert again["code"] == "unknown_problem_id"


def test_stale_submission_acknowledged_not_counted():
    server = make_server()
    # hold one problem while the frontier advances past it
    held = None
    advanced = False
    while not advanced:
        for problem in call(server, kind="get_problem", count=8)["problems"]:
            if held is None:
                held = problem
                continue  # keep this one unsubmitted for later
            call(server, kind="submit_results",
                 problem_id=problem["problem_id"], rewards=[1.0] * 16)
        advanced = advanced or (
            held is not None
            and server.state.windows[held["env_id"]].high > held["difficulty"]
        )
    window_before = dict(server.state.windows[held["env_id"]].__dict__)
    ack = call(server, kind="submit_results",
               problem_id=held["problem_id"], rewards=[1.0] * 16)
    assert ack["status"] == "ok"
    assert ack["counted"] is False
    assert server.state.windows[held["env_id"]].__dict__ == window_before


def test_export_over_the_wire():
    server = make_server()
    response = call(server, kind="export_testset", envs=["crt"], per_env=4,
                    difficulty_low=0, difficulty_high=3, seed=9)
    assert response["status"] == "ok"
    assert [p["difficulty"] for p in response["problems"]] == [0, 1, 2, 3]


def test_fuzzed_stream_one_response_per_request():
    server = make_server()
    rng = random.Random(0)
    requests = []
    for _ in range(10_000):
        roll = rng.random()
        if roll < 0.3:
            requests.append(json.dumps({"kind": "get_stats"}))
        elif roll < 0.5:
            requests.append(json.dumps({"kind": "get_problem", "count": rng.randint(0, 2)}))
        elif roll < 0.7:
            requests.append(json.dumps({
                "kind": "submit_results",
                "problem_id": f"prob-{rng.randrange(50):08d}",
                "rewards": [rng.uniform(-2, 2) for _ in range(rng.randint(0, 3))],
            }))
        elif roll < 0.8:
            requests.append(json.dumps({"kind": rng.choice(["", "bogus", None])}))
        else:
            requests.append(rng.choice(["{", "[]", "null", "42", "", "\x00garbage"]))
    responses = [server.handle_line(line) for line in requests]
    assert len(responses) == len(requests)
    for response in responses:
        record = json.loads(response)
        assert record["status"] in ("ok", "error")
        assert "\n" not in response


def test_differential_against_in_process_loop():
    """The served loop must mutate scheduler state exactly like an in-process
    loop fed the same sampling sequence and rewards."""
    server = make_server()
    shadow_state = init_state(
        REGISTRY.env_ids(),
        SchedulerConfig(),
        max_difficulty={
            e: REGISTRY.get(e).max_supported_difficulty for e in REGISTRY.env_ids()
        },
    )
    shadow_cursor = SeedSequencer(0)
    reward_rng = random.Random(77)
    for _ in range(120):
        [problem] = call(server, kind="get_problem")["problems"]
        env_id, difficulty = sample_task(shadow_state,
                                         shadow_cursor.next("sample_task"))
        instance = REGISTRY.generate(env_id, difficulty,
                                     shadow_cursor.next(env_id))
        assert (env_id, difficulty) == (problem["env_id"], problem["difficulty"])
        assert instance.prompt == problem["prompt"]
        rewards = [
            1.0 if reward_rng.random() < 0.95 else 0.0 for _ in range(16)
        ]
        call(server, kind="submit_results",
             problem_id=problem["problem_id"], rewards=rewards)
        record_outcomes(shadow_state, env_id, difficulty, rewards)
    assert server.state.windows == shadow_state.windows


def test_serve_stdio():
    server = make_server()
    stdin = io.StringIO(
        json.dumps({"kind": "get_stats"}) + "\n\n" + json.dumps({"kind": "get_problem"}) + "\n"
    )
    stdout = io.StringIO()
    serve_stdio(server, stdin=stdin, stdout=stdout)
    lines = stdout.getvalue().strip().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[0])["kind"] == "get_stats"
    assert json.loads(lines[1])["kind"] == "get_problem"
