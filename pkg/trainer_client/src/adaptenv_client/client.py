"""Synchronous request/response client for the adaptenv line protocol.

One JSON record per line; every request yields exactly one response, and
responses correlate to requests by order.  Sessions hold a single TCP
connection and are not safe to share across concurrent callers: use one
session per worker.
"""

import json
import socket
from typing import Dict, List, Optional, Sequence, Tuple


class ClientError(Exception):
    """Base class for all client-side errors."""


class Timeout(ClientError):
    """The server did not accept a connection or answer in time."""


class ServerError(ClientError):
    """The server answered with an error response."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


class UnknownProblemId(ServerError):
    """A submitted problem_id is not pending on the server."""


class ClientSession:
    """One connection to an adaptenv protocol server.

    Records every (request, response) line pair in ``transcript`` so traffic
    can be replayed or validated against the protocol schema.
    """

    def __init__(self, host: str, port: int, timeout: float = 10.0):
        self.endpoint: Tuple[str, int] = (host, port)
        self.timeout = timeout
        self.last_stats: Optional[Dict] = None
        self.transcript: List[Tuple[str, str]] = []
        try:
            self._socket = socket.create_connection(self.endpoint, timeout=timeout)
        except socket.timeout as err:
            raise Timeout(f"connecting to {host}:{port} timed out") from err
        except OSError as err:
            raise Timeout(f"could not reach {host}:{port}: {err}") from err
        self._reader = self._socket.makefile("r", encoding="utf-8", newline="\n")

    def close(self) -> None:
        try:
            self._reader.close()
        finally:
            self._socket.close()

    def __enter__(self) -> "ClientSession":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    # -- wire plumbing ------------------------------------------------------

    def _request(self, record: dict) -> dict:
        line = json.dumps(record, separators=(",", ":"))
        try:
            self._socket.sendall(line.encode("utf-8") + b"\n")
            response_line = self._reader.readline()
        except socket.timeout as err:
            raise Timeout("request timed out") from err
        except OSError as err:
            raise ClientError(f"connection failed: {err}") from err
        if not response_line:
            raise ClientError("server closed the connection")
        self.transcript.append((line, response_line.rstrip("\n")))
        response = json.loads(response_line)
        if response.get("status") == "error":
            code = response.get("code", "unknown")
            message = response.get("message", "")
            if code == "unknown_problem_id":
                raise UnknownProblemId(code, message)
            raise ServerError(code, message)
        return response

    # -- operations -----------------------------------------------------------

    def get_problems(self, count: int) -> List[dict]:
        if count < 0:
            raise ValueError("count must be non-negative")
        if count == 0:
            return []
        return self._request({"kind": "get_problem", "count": count})["problems"]

    def submit_rewards(self, problem_id: str, rewards: Sequence[float]) -> dict:
        rewards = [float(r) for r in rewards]
        if not rewards:
            raise ValueError("rewards must not be empty")
        for reward in rewards:
            if not -1.0 <= reward <= 1.0:
                raise ValueError(f"reward {reward} outside [-1, 1]")
        return self._request({
            "kind": "submit_results",
            "problem_id": problem_id,
            "rewards": rewards,
        })

    def get_stats(self) -> dict:
        stats = self._request({"kind": "get_stats"})
        self.last_stats = stats
        return stats

    def export_testset(self, envs: Sequence[str], per_env: int,
                       difficulty_low: int, difficulty_high: int,
                       seed: int) -> List[dict]:
        return self._request({
            "kind": "export_testset",
            "envs": list(envs),
            "per_env": per_env,
            "difficulty_low": difficulty_low,
            "difficulty_high": difficulty_high,
            "seed": seed,
        })["problems"]
