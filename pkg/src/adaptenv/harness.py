"""Simulation harness: dynamic sampling with oversampling and filtering,
effective-prompt-ratio metrics, and synthetic skill-based policies.

A step samples prompts in rounds of ``oversample_size``, collects
``rollouts_per_problem`` rollouts per prompt, discards groups whose rewards
are all identical, and stops once ``train_size`` mixed groups exist (or the
attempt cap is hit).  Every sampled prompt feeds the scheduler's frontier
counters and the step's effective-prompt-ratio denominator.
"""

import math
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AttemptCapExceeded, MissingReference
from .registry import EnvironmentRegistry, default_registry
from .rng import Coordinates, SeedSequencer, derive_rng, reseed
from .scheduler import (
    SchedulerConfig,
    SchedulerState,
    check_thresholds,
    init_state,
    record_outcomes,
)
from .types import ProblemInstance

# Deliberately unparseable for every environment: no digits, no expression.
FORMAT_ERROR_TEXT = "(no final answer)"

# Default environment subset for simulations: linear-time generators and
# verifiers with high difficulty ceilings, so 200-step runs stay cheap.
DEFAULT_SIMULATION_ENVS = ("crt", "inversion_pair", "josephus", "subset_sum")


@dataclass
class SyntheticPolicy:
    """Skill-parameterized stand-in for a trained model.

    Success probability at difficulty d is the logistic
    1 / (1 + exp((d - skill) / width)); skill grows by learn_rate for every
    trained problem whose rollout rewards were mixed.
    """

    skill: Dict[str, float] = field(default_factory=dict)
    width: float = 1.0
    learn_rate: float = 0.05
    format_error_prob: float = 0.0
    initial_skill: float = 0.0

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError("width must be positive")
        if self.learn_rate < 0:
            raise ValueError("learn_rate must be non-negative")
        if not 0 <= self.format_error_prob < 1:
            raise ValueError("format_error_prob must be in [0, 1)")

    def skill_for(self, env_id: str) -> float:
        return self.skill.get(env_id, self.initial_skill)

    def success_probability(self, env_id: str, difficulty: int) -> float:
        z = (difficulty - self.skill_for(env_id)) / self.width
        if z > 700.0:  # exp overflows around 709
            return 0.0
        return 1.0 / (1.0 + math.exp(z))

    def observe_training(self, observations: Sequence[Tuple[str, int, bool]]) -> None:
        for env_id, _difficulty, had_mixed_rewards in observations:
            if had_mixed_rewards:
                self.skill[env_id] = self.skill_for(env_id) + self.learn_rate


def synthetic_respond(policy: SyntheticPolicy, registry: EnvironmentRegistry,
                      instance: ProblemInstance, coords: Coordinates) -> str:
    """One rollout: format error, the reference, or a near-miss corruption."""
    if instance.reference_answer is None:
        raise MissingReference(f"instance of {instance.env_id!r} has no reference")
    rng = coords.rng()
    if policy.format_error_prob and rng.random() < policy.format_error_prob:
        return FORMAT_ERROR_TEXT
    if rng.random() < policy.success_probability(instance.env_id, instance.difficulty):
        return instance.reference_answer
    return _corruption(registry, instance)


def _corruption(registry: EnvironmentRegistry, instance: ProblemInstance,
                scratch: Optional[random.Random] = None) -> str:
    # deterministic per instance: derived from its own seed path
    if scratch is None:
        scratch = random.Random()
    rng = reseed(
        scratch,
        instance.seed_path.master_seed,
        f"{instance.env_id}/corrupt",
        instance.seed_path.counter,
    )
    return registry.corrupt_reference(instance, rng)


def synthetic_learn(policy: SyntheticPolicy,
                    observations: Sequence[Tuple[str, int, bool]]) -> SyntheticPolicy:
    policy.observe_training(observations)
    return policy


@dataclass
class RolloutGroup:
    instance: ProblemInstance
    outputs: List[str]
    rewards: List[float]
    mixed: bool


@dataclass
class StepMetrics:
    step: int
    effective_prompt_ratio: float
    per_env_high: Dict[str, int]
    frontier_accuracy: Dict[str, Optional[float]]
    policy_skill_snapshot: Optional[Dict[str, float]] = None
    sampled_prompts: int = 0
    mixed_prompts: int = 0
    kept_prompts: int = 0
    saturated: bool = False

    def to_record(self) -> dict:
        return {
            "step": self.step,
            "effective_prompt_ratio": self.effective_prompt_ratio,
            "per_env_high": self.per_env_high,
            "frontier_accuracy": self.frontier_accuracy,
            "policy_skill_snapshot": self.policy_skill_snapshot,
            "sampled_prompts": self.sampled_prompts,
            "mixed_prompts": self.mixed_prompts,
            "kept_prompts": self.kept_prompts,
            "saturated": self.saturated,
        }


def compute_effective_prompt_ratio(groups: Sequence[RolloutGroup]) -> float:
    if not groups:
        return 0.0
    return sum(1 for g in groups if g.mixed) / len(groups)


def _rollout_group(registry: EnvironmentRegistry, policy, instance: ProblemInstance,
                   rollouts_per_problem: int, cursor: SeedSequencer,
                   rng=None, corrupt_scratch=None) -> RolloutGroup:
    if isinstance(policy, SyntheticPolicy):
        # one derived stream per group; outputs take at most three distinct
        # values, so verification is cached per distinct output
        if rng is None:
            rng = cursor.next(f"{instance.env_id}/rollouts").rng()
        p = policy.success_probability(instance.env_id, instance.difficulty)
        fe = policy.format_error_prob
        corruption = None
        outputs = []
        for _ in range(rollouts_per_problem):
            if fe and rng.random() < fe:
                outputs.append(FORMAT_ERROR_TEXT)
            elif rng.random() < p:
                outputs.append(instance.reference_answer)
            else:
                if corruption is None:
                    corruption = _corruption(registry, instance, corrupt_scratch)
                outputs.append(corruption)
    else:
        outputs = [
            policy.respond(instance.prompt, cursor.next(f"{instance.env_id}/rollout"))
            for _ in range(rollouts_per_problem)
        ]
    reward_cache: Dict[str, float] = {}
    rewards = []
    for output in outputs:
        reward = reward_cache.get(output)
        if reward is None:
            reward = registry.verify(instance, output).reward
            reward_cache[output] = reward
        rewards.append(reward)
    mixed = len(rewards) > 1 and max(rewards) != min(rewards)
    return RolloutGroup(instance, outputs, rewards, mixed)


def collect_training_batch(
    registry: EnvironmentRegistry,
    policy,
    cursor: SeedSequencer,
    *,
    scheduler_state: Optional[SchedulerState] = None,
    env_ids: Optional[Sequence[str]] = None,
    static_range_high: Optional[int] = None,
    train_size: int = 128,
    oversample_size: int = 384,
    rollouts_per_problem: int = 16,
    attempt_cap_factor: int = 10,
    check_mode: str = "problem",
    step: int = 0,
) -> Tuple[List[RolloutGroup], StepMetrics]:
    """One dynamic-sampling step.  Adaptive mode draws difficulties from
    scheduler windows and feeds outcomes back; static mode draws uniformly
    from [0, static_range_high] (clamped to each environment's cap).

    Raises AttemptCapExceeded (carrying the partial batch and metrics) when
    the cap is hit before the batch fills.
    """
    if train_size > oversample_size:
        raise ValueError("train_size must not exceed oversample_size")
    if check_mode not in ("problem", "step"):
        raise ValueError("check_mode must be 'problem' or 'step'")
    adaptive = scheduler_state is not None
    if adaptive:
        env_order = scheduler_state._env_order
    else:
        if static_range_high is None or not env_ids:
            raise ValueError("static mode needs env_ids and static_range_high")
        env_order = tuple(sorted(env_ids))
        static_caps = {
            env_id: min(static_range_high,
                        registry.get(env_id).max_supported_difficulty)
            for env_id in env_order
        }

    cap = attempt_cap_factor * oversample_size
    kept: List[RolloutGroup] = []
    sampled = 0
    mixed_total = 0
    frontier_tally: Dict[str, List[int]] = {}
    # scratch instances, re-seeded per group: one per concurrently live
    # stream (task+rollouts, generation, corruption)
    group_scratch = random.Random()
    gen_scratch = random.Random()
    corrupt_scratch = random.Random()

    while len(kept) < train_size and sampled < cap:
        round_size = min(oversample_size, cap - sampled)
        for _ in range(round_size):
            # one derived stream covers task choice and rollout outcomes
            coords = cursor.next("sample_task")
            group_rng = reseed(group_scratch, coords.master_seed,
                               coords.env_id, coords.counter)
            if adaptive:
                env_id = env_order[group_rng.randrange(len(env_order))]
                window = scheduler_state.windows[env_id]
                difficulty = group_rng.randint(window.low, window.high)
                frontier = window.high
            else:
                env_id = env_order[group_rng.randrange(len(env_order))]
                difficulty = min(group_rng.randint(0, static_range_high),
                                 static_caps[env_id])
                frontier = None
            coords = cursor.next(env_id)
            instance = registry.generate(
                env_id, difficulty, coords,
                rng=reseed(gen_scratch, coords.master_seed, env_id,
                           coords.counter),
            )
            group = _rollout_group(registry, policy, instance,
                                   rollouts_per_problem, cursor,
                                   rng=group_rng,
                                   corrupt_scratch=corrupt_scratch)
            sampled += 1
            if group.mixed:
                mixed_total += 1
                if len(kept) < train_size:
                    kept.append(group)
            if adaptive:
                if difficulty == frontier:
                    tally = frontier_tally.setdefault(env_id, [0, 0])
                    tally[0] += sum(1 for r in group.rewards if r >= 1.0 - 1e-9)
                    tally[1] += len(group.rewards)
                record_outcomes(scheduler_state, env_id, difficulty,
                                group.rewards, check=(check_mode == "problem"))

    if adaptive and check_mode == "step":
        check_thresholds(scheduler_state)
        scheduler_state.step_counter += 1
    elif adaptive:
        scheduler_state.step_counter += 1

    metrics = StepMetrics(
        step=step,
        effective_prompt_ratio=(mixed_total / sampled) if sampled else 0.0,
        per_env_high=(
            {e: scheduler_state.windows[e].high for e in env_order}
            if adaptive else {}
        ),
        frontier_accuracy={
            e: (frontier_tally[e][0] / frontier_tally[e][1]
                if e in frontier_tally and frontier_tally[e][1] else None)
            for e in env_order
        } if adaptive else {},
        sampled_prompts=sampled,
        mixed_prompts=mixed_total,
        kept_prompts=len(kept),
        saturated=len(kept) < train_size,
    )
    if len(kept) < train_size:
        raise AttemptCapExceeded(kept, metrics)
    return kept, metrics


@dataclass
class SimulationConfig:
    mode: str = "adaptive"  # "adaptive" or "static"
    static_range_high: Optional[int] = None
    env_ids: Tuple[str, ...] = DEFAULT_SIMULATION_ENVS
    steps: int = 200
    master_seed: int = 0
    train_size: int = 128
    oversample_size: int = 384
    rollouts_per_problem: int = 16
    attempt_cap_factor: int = 10
    initial_skill: float = 0.0
    width: float = 1.0
    learn_rate: float = 0.05
    format_error_prob: float = 0.0
    tau_acc: float = 0.9
    d_delta: int = 4
    check_mode: str = "problem"

    def __post_init__(self):
        if self.mode not in ("adaptive", "static"):
            raise ValueError("mode must be 'adaptive' or 'static'")
        if self.mode == "static" and self.static_range_high is None:
            raise ValueError("static mode needs static_range_high")

    @classmethod
    def from_dict(cls, record: dict) -> "SimulationConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(record) - known
        if unknown:
            raise ValueError(f"unknown simulation config keys: {sorted(unknown)}")
        if "env_ids" in record:
            record = dict(record, env_ids=tuple(record["env_ids"]))
        return cls(**record)


def run_simulation(config: SimulationConfig,
                   registry: Optional[EnvironmentRegistry] = None) -> List[StepMetrics]:
    """The full loop {collect_training_batch -> synthetic_learn}; cap hits
    are reported in metrics (saturated=True), not fatal."""
    registry = registry or default_registry()
    policy = SyntheticPolicy(
        width=config.width,
        learn_rate=config.learn_rate,
        format_error_prob=config.format_error_prob,
        initial_skill=config.initial_skill,
    )
    cursor = SeedSequencer(config.master_seed)
    state = None
    if config.mode == "adaptive":
        caps = {
            env_id: registry.get(env_id).max_supported_difficulty
            for env_id in config.env_ids
        }
        state = init_state(
            config.env_ids,
            SchedulerConfig(
                tau_acc=config.tau_acc,
                rollouts_per_problem=config.rollouts_per_problem,
                d_delta=config.d_delta,
            ),
            max_difficulty=caps,
        )
    history: List[StepMetrics] = []
    for step in range(config.steps):
        try:
            groups, metrics = collect_training_batch(
                registry,
                policy,
                cursor,
                scheduler_state=state,
                env_ids=None if state is not None else config.env_ids,
                static_range_high=config.static_range_high,
                train_size=config.train_size,
                oversample_size=config.oversample_size,
                rollouts_per_problem=config.rollouts_per_problem,
                attempt_cap_factor=config.attempt_cap_factor,
                check_mode=config.check_mode,
                step=step,
            )
        except AttemptCapExceeded as err:
            groups, metrics = err.groups, err.metrics
        observations = [
            (g.instance.env_id, g.instance.difficulty, g.mixed) for g in groups
        ]
        synthetic_learn(policy, observations)
        metrics.policy_skill_snapshot = {
            env_id: policy.skill_for(env_id) for env_id in config.env_ids
        }
        history.append(metrics)
    return history
