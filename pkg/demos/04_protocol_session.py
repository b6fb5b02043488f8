"""
Serving problems over the line protocol
=======================================

A trainer talks to the environment suite through newline-delimited JSON:
one request per line, one response per line.  This demo starts a TCP server
in a background thread and walks through a get/submit/stats session with a
raw socket, then shows a checkpoint of the server's scheduler state.
"""

import json
import socket
import threading

from adaptenv import (
    ProtocolServer,
    SchedulerConfig,
    SeedSequencer,
    default_registry,
    init_state,
    save_checkpoint,
    serve_tcp,
)

registry = default_registry()
state = init_state(registry.env_ids(), SchedulerConfig())
sequencer = SeedSequencer(master_seed=42)
server = ProtocolServer(registry, state, sequencer)

address = {}
ready = threading.Event()


def announce(endpoint):
    address["endpoint"] = endpoint
    ready.set()


thread = threading.Thread(
    target=serve_tcp, args=(server, "127.0.0.1", 0, announce), daemon=True
)
thread.start()
ready.wait()
print("server listening on %s:%d" % address["endpoint"])

connection = socket.create_connection(address["endpoint"])
reader = connection.makefile("r")


def call(request):
    connection.sendall((json.dumps(request) + "\n").encode())
    return json.loads(reader.readline())


# Ask for a problem: the server samples an environment and a difficulty
# from the current windows and issues an opaque problem id
response = call({"kind": "get_problem", "count": 1})
problem = response["problems"][0]
print("got", problem["problem_id"], "from", problem["env_id"],
      "at difficulty", problem["difficulty"])

# The trainer runs its rollouts elsewhere and submits the 16 rewards;
# frontier submissions count toward the difficulty check
ack = call({
    "kind": "submit_results",
    "problem_id": problem["problem_id"],
    "rewards": [1.0] * 16,
})
print("submission counted toward the frontier:", ack["counted"])

# Problem ids are single use
again = call({
    "kind": "submit_results",
    "problem_id": problem["problem_id"],
    "rewards": [1.0] * 16,
})
print("second submit:", again["status"], "-", again["code"])

# Stats expose every window plus the cumulative effective prompt ratio
stats = call({"kind": "get_stats"})
window = stats["envs"][problem["env_id"]]
print("window after submit:", window)

connection.close()

# The full scheduler state round-trips through a canonical checkpoint,
# so a restarted server resumes exactly where it left off
blob = save_checkpoint(state, sequencer)
print("checkpoint:", blob.decode()[:100] + "...")
