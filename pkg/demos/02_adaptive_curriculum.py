"""
Adaptive difficulty windows
===========================

The scheduler keeps a difficulty window [low, high] per environment.  Rollout
outcomes at the frontier (d == high) accumulate; once 128 rollouts are in,
accuracy >= 0.9 advances the frontier by one and drags the lower bound along
so the window never grows wider than four levels.
"""

import random

from adaptenv import (
    Coordinates,
    SchedulerConfig,
    init_state,
    record_outcomes,
    sample_task,
)

config = SchedulerConfig()  # tau_acc=0.9, 16 rollouts/problem, tau_num=128
state = init_state(["easy_env", "hard_env"], config)

# A toy policy: solves easy_env 95% of the time regardless of difficulty,
# hard_env only when the difficulty stays below 3
rng = random.Random(0)


def rollout_rewards(env_id, difficulty):
    if env_id == "easy_env":
        p = 0.95
    else:
        p = 0.95 if difficulty < 3 else 0.4
    return [1.0 if rng.random() < p else 0.0 for _ in range(16)]


for step in range(400):
    env_id, difficulty = sample_task(state, Coordinates(0, "demo", step))
    record_outcomes(state, env_id, difficulty, rollout_rewards(env_id, difficulty))
    if step % 80 == 0:
        windows = {e: (w.low, w.high) for e, w in state.windows.items()}
        print(f"step {step:3d}: {windows}")

# easy_env keeps climbing; hard_env stalls once its frontier needs accuracy
# it cannot deliver
print("final:", {e: (w.low, w.high) for e, w in state.windows.items()})

# Submitting above the window is an error; below the window is silently
# ignored (stale results from a slow worker)
from adaptenv import DifficultyAboveWindow

try:
    record_outcomes(state, "easy_env", 10_000, [1.0] * 16)
except DifficultyAboveWindow as err:
    print("rejected:", err)

before = state.windows["easy_env"].attempted
record_outcomes(state, "easy_env", 0, [1.0] * 16)  # stale, not counted
assert state.windows["easy_env"].attempted == before
print("stale submission left the counters untouched")
