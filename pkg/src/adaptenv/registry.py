"""Environment registry: lookup, generation, and verification dispatch."""

import random
from typing import Callable, List, Optional, Sequence

from .environments.base import Environment
from .environments.bubbleswap import BubbleSwapEnv
from .environments.hamiltonian import HamiltonianPathEnv
from .environments.integral import IntegralEnv
from .environments.multiplication import MultiplicationEnv
from .environments.polynomial import PolynomialMinimumEnv
from .environments.sorting import SortingEnv
from .environments.sudoku import SudokuEnv
from .environments.tier2 import (
    ChineseRemainderEnv,
    InversionPairEnv,
    JosephusEnv,
    KnapsackEnv,
    MinimumSpanningTreeEnv,
    SatisfiabilityEnv,
    ShortestPathEnv,
    SubsetSumEnv,
    TopologicalSortEnv,
)
from .errors import DifficultyOutOfRange, DuplicateEnvironmentId, UnknownEnvironment
from .rng import Coordinates, derive_rng
from .types import EnvironmentDescriptor, ProblemInstance, SeedPath, VerificationVerdict

ALL_ENVIRONMENTS = (
    BubbleSwapEnv,
    ChineseRemainderEnv,
    HamiltonianPathEnv,
    IntegralEnv,
    InversionPairEnv,
    JosephusEnv,
    KnapsackEnv,
    MinimumSpanningTreeEnv,
    MultiplicationEnv,
    PolynomialMinimumEnv,
    SatisfiabilityEnv,
    ShortestPathEnv,
    SortingEnv,
    SubsetSumEnv,
    SudokuEnv,
    TopologicalSortEnv,
)


class FunctionEnvironment(Environment):
    """Adapter wrapping bare generator/verifier procedures."""

    def __init__(self, descriptor: EnvironmentDescriptor,
                 generator: Callable, verifier: Callable):
        self.env_id = descriptor.env_id
        self.display_name = descriptor.display_name
        self.category = descriptor.category
        self.max_supported_difficulty = descriptor.max_supported_difficulty
        self.has_planted_solution = descriptor.has_planted_solution
        self.reward_style = descriptor.reward_style
        self._generator = generator
        self._verifier = verifier

    def generate(self, difficulty, rng):
        return self._generator(difficulty, rng)

    def verify(self, instance, output):
        return self._verifier(instance, output)


class EnvironmentRegistry:
    """Immutable-after-construction mapping from env_id to environment."""

    def __init__(self, environments: Sequence[Environment] = ()):
        self._environments = {}
        for env in environments:
            self.register(env)

    def register(self, env: Environment) -> "EnvironmentRegistry":
        if env.env_id in self._environments:
            raise DuplicateEnvironmentId(env.env_id)
        self._environments[env.env_id] = env
        return self

    def register_procedures(self, descriptor: EnvironmentDescriptor,
                            generator: Callable, verifier: Callable) -> "EnvironmentRegistry":
        return self.register(FunctionEnvironment(descriptor, generator, verifier))

    def get(self, env_id: str) -> Environment:
        try:
            return self._environments[env_id]
        except KeyError:
            raise UnknownEnvironment(env_id) from None

    def __contains__(self, env_id: str) -> bool:
        return env_id in self._environments

    def env_ids(self) -> List[str]:
        return sorted(self._environments)

    def descriptors(self) -> List[EnvironmentDescriptor]:
        return [self._environments[eid].descriptor() for eid in self.env_ids()]

    def generate(self, env_id: str, difficulty: int, coords: Coordinates,
                 rng=None) -> ProblemInstance:
        env = self.get(env_id)
        if not 0 <= difficulty <= env.max_supported_difficulty:
            raise DifficultyOutOfRange(env_id, difficulty, env.max_supported_difficulty)
        # derive from the generating env_id so an instance is reproducible
        # from (env_id, difficulty, seed_path) alone; callers in hot loops
        # may pass a pre-seeded scratch rng on the same stream
        if rng is None:
            rng = derive_rng(coords.master_seed, env_id, coords.counter)
        params, prompt, reference = env.generate(difficulty, rng)
        return ProblemInstance(
            env_id=env_id,
            difficulty=difficulty,
            params=params,
            prompt=prompt,
            reference_answer=reference,
            seed_path=SeedPath(coords.master_seed, coords.counter),
        )

    def verify(self, instance: ProblemInstance, output: str) -> VerificationVerdict:
        return self.get(instance.env_id).verify(instance, output)

    def corrupt_reference(self, instance: ProblemInstance, rng: random.Random) -> str:
        return self.get(instance.env_id).corrupt_reference(instance, rng)

    def manifests(self) -> List[dict]:
        return [self._environments[eid].manifest() for eid in self.env_ids()]


def default_registry() -> EnvironmentRegistry:
    """All 16 built-in environments."""
    return EnvironmentRegistry([cls() for cls in ALL_ENVIRONMENTS])
