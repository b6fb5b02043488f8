"""Checkpoint persistence and the line-oriented request/response protocol.

Checkpoints are canonical JSON (fixed field order, envs sorted by env_id) so
identical states always produce identical bytes.  The wire protocol is one
JSON record per line over a stream socket or standard input/output; every
request line yields exactly one response line, and malformed input yields an
error response rather than a dropped connection.
"""

import json
import socketserver
import sys
import threading
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    AdaptEnvError,
    DeduplicationExhausted,
    MalformedCheckpoint,
    UnsupportedVersion,
)
from .registry import EnvironmentRegistry
from .rng import SeedSequencer
from .scheduler import (
    DifficultyWindow,
    SchedulerConfig,
    SchedulerState,
    record_outcomes,
    sample_task,
)
from .types import ProblemInstance

CHECKPOINT_MAGIC = "adaptenv-checkpoint"
CHECKPOINT_VERSION = 1
CHECKPOINT_EXTENSION = ".aeck.json"

# Attempts allowed per problem slot before deduplication gives up.
DEDUP_RETRY_FACTOR = 64


# ---------------------------------------------------------------------------
# Checkpoints


def save_checkpoint(state: SchedulerState, sequencer: SeedSequencer) -> bytes:
    """Canonical bytes for (scheduler state, sampling cursor)."""
    record = {
        "magic": CHECKPOINT_MAGIC,
        "version": CHECKPOINT_VERSION,
        "config": {
            "tau_acc": state.config.tau_acc,
            "rollouts_per_problem": state.config.rollouts_per_problem,
            "tau_num": state.config.tau_num,
            "d_delta": state.config.d_delta,
        },
        "envs": [
            {
                "env_id": env_id,
                "low": state.windows[env_id].low,
                "high": state.windows[env_id].high,
                "correct": state.windows[env_id].correct,
                "attempted": state.windows[env_id].attempted,
            }
            for env_id in sorted(state.windows)
        ],
        "max_difficulty": {
            env_id: state.max_difficulty[env_id]
            for env_id in sorted(state.max_difficulty)
        },
        "step_counter": state.step_counter,
        "master_seed": sequencer.master_seed,
        "counter": sequencer.counter,
    }
    return (json.dumps(record, separators=(",", ":")) + "\n").encode("utf-8")


def restore_checkpoint(data: bytes) -> Tuple[SchedulerState, SeedSequencer]:
    try:
        record = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, ValueError) as err:
        raise MalformedCheckpoint(f"checkpoint is not valid JSON: {err}") from None
    if not isinstance(record, dict) or record.get("magic") != CHECKPOINT_MAGIC:
        raise MalformedCheckpoint("missing checkpoint magic")
    if record.get("version") != CHECKPOINT_VERSION:
        raise UnsupportedVersion(record.get("version"))
    try:
        config = SchedulerConfig(
            tau_acc=record["config"]["tau_acc"],
            rollouts_per_problem=record["config"]["rollouts_per_problem"],
            tau_num=record["config"]["tau_num"],
            d_delta=record["config"]["d_delta"],
        )
        windows = {}
        for entry in record["envs"]:
            windows[entry["env_id"]] = DifficultyWindow(
                low=int(entry["low"]),
                high=int(entry["high"]),
                correct=int(entry["correct"]),
                attempted=int(entry["attempted"]),
            )
        state = SchedulerState(
            windows=windows,
            config=config,
            step_counter=int(record["step_counter"]),
            max_difficulty={
                k: int(v) for k, v in record["max_difficulty"].items()
            },
            _env_order=tuple(sorted(windows)),
        )
        sequencer = SeedSequencer(int(record["master_seed"]),
                                  int(record["counter"]))
    except (KeyError, TypeError, ValueError) as err:
        raise MalformedCheckpoint(f"checkpoint field error: {err}") from None
    if not windows:
        raise MalformedCheckpoint("checkpoint contains no environments")
    return state, sequencer


def write_checkpoint(path: str, state: SchedulerState,
                     sequencer: SeedSequencer) -> None:
    with open(path, "wb") as fh:
        fh.write(save_checkpoint(state, sequencer))


def read_checkpoint(path: str) -> Tuple[SchedulerState, SeedSequencer]:
    with open(path, "rb") as fh:
        return restore_checkpoint(fh.read())


# ---------------------------------------------------------------------------
# Testset export


def export_testset(registry: EnvironmentRegistry, env_ids: Sequence[str],
                   per_env: int, d_low: int, d_high: int,
                   seed: int) -> List[ProblemInstance]:
    """Fixed evaluation dataset: per environment, per_env unique problems
    with difficulties cycling evenly over [d_low, d_high]."""
    if d_low < 0 or d_low > d_high:
        raise ValueError("need 0 <= d_low <= d_high")
    if per_env < 1:
        raise ValueError("per_env must be at least 1")
    cursor = SeedSequencer(seed)
    span = d_high - d_low + 1
    dataset: List[ProblemInstance] = []
    for env_id in env_ids:
        registry.get(env_id)  # raises UnknownEnvironment early
        seen_prompts = set()
        attempts_left = per_env * DEDUP_RETRY_FACTOR
        for i in range(per_env):
            difficulty = d_low + i % span
            while True:
                if attempts_left == 0:
                    raise DeduplicationExhausted(
                        f"could not find {per_env} unique prompts for "
                        f"{env_id!r} in range [{d_low}, {d_high}]"
                    )
                attempts_left -= 1
                instance = registry.generate(
                    env_id, difficulty, cursor.next(f"export/{env_id}")
                )
                if instance.prompt not in seen_prompts:
                    seen_prompts.add(instance.prompt)
                    dataset.append(instance)
                    break
    return dataset


# ---------------------------------------------------------------------------
# Protocol server


class ProtocolServer:
    """Applies wire requests to a registry + scheduler state.

    Thread-safe: every request is handled under one lock, so concurrent
    client sessions see state mutations in arrival order.
    """

    def __init__(self, registry: EnvironmentRegistry, state: SchedulerState,
                 sequencer: Optional[SeedSequencer] = None,
                 include_reference: bool = False):
        self.registry = registry
        self.state = state
        self.sequencer = sequencer or SeedSequencer(0)
        self.include_reference = include_reference
        self._lock = threading.Lock()
        self._pending: Dict[str, Tuple[ProblemInstance, int]] = {}
        self._issued = 0
        self._scored = 0
        self._mixed_total = 0
        self._sampled_total = 0

    # -- request dispatch ---------------------------------------------------

    def handle_line(self, line: str) -> str:
        """One request line in, exactly one response line out."""
        with self._lock:
            try:
                request = json.loads(line)
            except ValueError:
                return self._error("malformed_request", "request is not valid JSON")
            if not isinstance(request, dict) or "kind" not in request:
                return self._error("malformed_request", "request needs a 'kind' field")
            kind = request["kind"]
            handler = {
                "get_problem": self._handle_get_problem,
                "submit_results": self._handle_submit_results,
                "get_stats": self._handle_get_stats,
                "export_testset": self._handle_export_testset,
            }.get(kind)
            if handler is None:
                return self._error("malformed_request", f"unknown kind: {kind!r}")
            try:
                return handler(request)
            except AdaptEnvError as err:
                code = _error_code(err)
                return self._error(code, str(err))
            except (KeyError, TypeError, ValueError) as err:
                return self._error("malformed_request", f"bad request fields: {err}")

    @staticmethod
    def _error(code: str, message: str) -> str:
        return json.dumps(
            {"status": "error", "code": code, "message": message},
            separators=(",", ":"),
        )

    @staticmethod
    def _ok(kind: str, **fields) -> str:
        record = {"status": "ok", "kind": kind}
        record.update(fields)
        return json.dumps(record, separators=(",", ":"))

    # -- handlers -------------------------------------------------------------

    def _handle_get_problem(self, request: dict) -> str:
        count = request.get("count", 1)
        if not isinstance(count, int) or count < 0:
            return self._error("malformed_request", "count must be a non-negative integer")
        problems = []
        for _ in range(count):
            env_id, difficulty = sample_task(
                self.state, self.sequencer.next("sample_task")
            )
            instance = self.registry.generate(
                env_id, difficulty, self.sequencer.next(env_id)
            )
            problem_id = f"prob-{self._issued:08d}"
            self._issued += 1
            frontier = self.state.windows[env_id].high
            self._pending[problem_id] = (instance, frontier)
            record = instance.to_record()
            if not self.include_reference:
                record.pop("reference_answer", None)
            record["problem_id"] = problem_id
            problems.append(record)
        return self._ok("get_problem", problems=problems)

    def _handle_submit_results(self, request: dict) -> str:
        problem_id = request["problem_id"]
        rewards = request["rewards"]
        if not isinstance(rewards, list) or not rewards or not all(
            isinstance(r, (int, float)) and not isinstance(r, bool)
            and -1.0 <= r <= 1.0
            for r in rewards
        ):
            return self._error(
                "malformed_request",
                "rewards must be a non-empty list of numbers in [-1, 1]",
            )
        entry = self._pending.pop(problem_id, None)
        if entry is None:
            return self._error("unknown_problem_id",
                               f"no pending problem {problem_id!r}")
        instance, _frontier_at_issue = entry
        window = self.state.windows[instance.env_id]
        # a problem issued at an old frontier is acknowledged but not counted
        counted = instance.difficulty == window.high
        record_outcomes(self.state, instance.env_id, instance.difficulty,
                        rewards, check=True)
        self._scored += 1
        self._sampled_total += 1
        if len(rewards) > 1 and max(rewards) != min(rewards):
            self._mixed_total += 1
        return self._ok("submit_results", problem_id=problem_id, counted=counted)

    def _handle_get_stats(self, request: dict) -> str:
        envs = {
            env_id: {
                "low": w.low,
                "high": w.high,
                "correct": w.correct,
                "attempted": w.attempted,
            }
            for env_id, w in sorted(self.state.windows.items())
        }
        ratio = (self._mixed_total / self._sampled_total
                 if self._sampled_total else 0.0)
        return self._ok(
            "get_stats",
            envs=envs,
            effective_prompt_ratio=ratio,
            problems_issued=self._issued,
            problems_scored=self._scored,
            step_counter=self.state.step_counter,
        )

    def _handle_export_testset(self, request: dict) -> str:
        env_ids = request["envs"]
        if not isinstance(env_ids, list) or not all(
            isinstance(e, str) for e in env_ids
        ):
            return self._error("malformed_request", "envs must be a list of ids")
        dataset = export_testset(
            self.registry,
            env_ids,
            per_env=int(request["per_env"]),
            d_low=int(request["difficulty_low"]),
            d_high=int(request["difficulty_high"]),
            seed=int(request["seed"]),
        )
        return self._ok(
            "export_testset",
            problems=[inst.to_record() for inst in dataset],
        )


def _error_code(err: AdaptEnvError) -> str:
    name = type(err).__name__
    if name == "UnknownEnvironment":
        return "unknown_env"
    # CamelCase -> snake_case
    out = []
    for ch in name:
        if ch.isupper() and out:
            out.append("_")
        out.append(ch.lower())
    return "".join(out)


# ---------------------------------------------------------------------------
# Transports


def serve_stdio(server: ProtocolServer, stdin=None, stdout=None) -> None:
    """One request per input line until end of stream."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        stdout.write(server.handle_line(line) + "\n")
        stdout.flush()


class _LineHandler(socketserver.StreamRequestHandler):
    def handle(self):
        while True:
            line = self.rfile.readline()
            if not line:
                return
            text = line.decode("utf-8", errors="replace").strip()
            if not text:
                continue
            response = self.server.protocol_server.handle_line(text)
            self.wfile.write(response.encode("utf-8") + b"\n")


class TcpServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, address: Tuple[str, int], server: ProtocolServer):
        super().__init__(address, _LineHandler)
        self.protocol_server = server


def serve_tcp(server: ProtocolServer, host: str, port: int,
              ready_callback=None) -> None:
    """Blocking TCP loop; ready_callback receives the bound (host, port)."""
    with TcpServer((host, port), server) as tcp:
        if ready_callback is not None:
            ready_callback(tcp.server_address)
        tcp.serve_forever()
