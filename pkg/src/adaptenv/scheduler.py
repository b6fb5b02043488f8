"""Adaptive difficulty windows plus static baseline sampling.

Each environment keeps a window [low, high].  Rollout outcomes at the
frontier difficulty (d == high) accumulate into (correct, attempted); once
attempted reaches tau_num the accuracy is checked against tau_acc: passing
advances the frontier by one and slides the lower bound to keep the window
at most d_delta wide.  The counters reset after every check.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

from .errors import (
    DifficultyAboveWindow,
    DuplicateEnvironmentId,
    EmptyEnvironmentSet,
    UnknownEnvironment,
)
from .rng import Coordinates

# A graded reward this close to +1.0 counts as a correct rollout.
CORRECT_EPS = 1e-9


def is_correct(reward: float) -> bool:
    return reward >= 1.0 - CORRECT_EPS


@dataclass(frozen=True)
class SchedulerConfig:
    tau_acc: float = 0.9
    rollouts_per_problem: int = 16
    tau_num: Optional[int] = None  # defaults to 8 * rollouts_per_problem
    d_delta: int = 4

    def __post_init__(self):
        if not 0 < self.tau_acc <= 1:
            raise ValueError("tau_acc must be in (0, 1]")
        if self.rollouts_per_problem < 1:
            raise ValueError("rollouts_per_problem must be positive")
        if self.d_delta <= 1:
            raise ValueError("d_delta must be greater than 1")
        if self.tau_num is None:
            object.__setattr__(self, "tau_num", 8 * self.rollouts_per_problem)
        elif self.tau_num < 1:
            raise ValueError("tau_num must be positive")


@dataclass
class DifficultyWindow:
    low: int = 0
    high: int = 0
    correct: int = 0
    attempted: int = 0


@dataclass
class SchedulerState:
    windows: Dict[str, DifficultyWindow]
    config: SchedulerConfig
    step_counter: int = 0
    max_difficulty: Dict[str, int] = field(default_factory=dict)
    _env_order: Tuple[str, ...] = ()

    def window(self, env_id: str) -> DifficultyWindow:
        try:
            return self.windows[env_id]
        except KeyError:
            raise UnknownEnvironment(env_id) from None


def init_state(env_ids: Sequence[str], config: Optional[SchedulerConfig] = None,
               max_difficulty: Optional[Dict[str, int]] = None) -> SchedulerState:
    if not env_ids:
        raise EmptyEnvironmentSet("scheduler needs at least one environment")
    if len(set(env_ids)) != len(env_ids):
        duplicates = sorted({e for e in env_ids if list(env_ids).count(e) > 1})
        raise DuplicateEnvironmentId(duplicates[0])
    config = config or SchedulerConfig()
    order = tuple(sorted(env_ids))
    return SchedulerState(
        windows={env_id: DifficultyWindow() for env_id in order},
        config=config,
        max_difficulty=dict(max_difficulty or {}),
        _env_order=order,
    )


def sample_task(state: SchedulerState, coords: Coordinates) -> Tuple[str, int]:
    """Uniform environment, then uniform difficulty inside its window."""
    rng = coords.rng()
    env_id = state._env_order[rng.randrange(len(state._env_order))]
    window = state.windows[env_id]
    return env_id, rng.randint(window.low, window.high)


def record_outcomes(state: SchedulerState, env_id: str, difficulty: int,
                    rollout_rewards: Sequence[float],
                    check: bool = True) -> DifficultyWindow:
    """Feed one problem's rollout rewards; frontier-only counting.

    With check=False the threshold check is deferred (batch-granularity
    callers run check_thresholds at the end of the step instead).
    """
    window = state.window(env_id)
    if difficulty > window.high:
        raise DifficultyAboveWindow(env_id, difficulty, window.high)
    if difficulty == window.high:
        window.attempted += len(rollout_rewards)
        window.correct += sum(1 for r in rollout_rewards if is_correct(r))
        if check:
            _check_window(state, env_id, window)
    return window


def check_thresholds(state: SchedulerState) -> None:
    """Deferred threshold checks for every environment (one per window)."""
    for env_id in state._env_order:
        _check_window(state, env_id, state.windows[env_id])


def _check_window(state: SchedulerState, env_id: str, window: DifficultyWindow) -> None:
    config = state.config
    if window.attempted < config.tau_num:
        return
    cap = state.max_difficulty.get(env_id)
    if window.correct / window.attempted >= config.tau_acc:
        if cap is None or window.high < cap:
            window.high += 1
            window.low = max(window.low, window.high - config.d_delta + 1)
    window.correct = 0
    window.attempted = 0


def static_sample(range_high: int, coords: Coordinates) -> int:
    """Stateless uniform difficulty over [0, range_high]."""
    if range_high < 0:
        raise ValueError("range_high must be non-negative")
    return coords.rng().randint(0, range_high)
