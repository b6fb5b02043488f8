"""Core data types: problem instances, verdicts, and descriptors."""

from dataclasses import dataclass, field
from typing import Any, Optional

# Verdict categories
PARSE_FAILURE = "ParseFailure"
STRUCTURAL_VIOLATION = "StructuralViolation"
GRADED = "Graded"
EXACT = "Exact"

CATEGORIES = (PARSE_FAILURE, STRUCTURAL_VIOLATION, GRADED, EXACT)

# Environment source categories
ENV_CATEGORIES = (
    "programming-competition",
    "math-operation",
    "optimization",
    "classical-algorithm",
    "logic-puzzle",
    "np-complete",
)


@dataclass(frozen=True)
class VerificationVerdict:
    reward: float
    category: str
    detail: Optional[str] = None

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown verdict category: {self.category!r}")
        if not -1.0 <= self.reward <= 1.0:
            raise ValueError(f"reward out of range: {self.reward}")
        if self.category == PARSE_FAILURE and self.reward != -1.0:
            raise ValueError("ParseFailure requires reward -1.0")
        if self.category == EXACT and self.reward != 1.0:
            raise ValueError("Exact requires reward +1.0")
        if self.category == STRUCTURAL_VIOLATION and self.reward not in (-0.5, 0.0):
            raise ValueError("StructuralViolation requires reward -0.5 or 0.0")


def parse_failure(detail: str = "unparseable output") -> VerificationVerdict:
    return VerificationVerdict(-1.0, PARSE_FAILURE, detail)


def structural_violation(reward: float, detail: str) -> VerificationVerdict:
    return VerificationVerdict(reward, STRUCTURAL_VIOLATION, detail)


def graded(reward: float, detail: Optional[str] = None) -> VerificationVerdict:
    return VerificationVerdict(reward, GRADED, detail)


def exact() -> VerificationVerdict:
    return VerificationVerdict(1.0, EXACT, None)


@dataclass(frozen=True)
class SeedPath:
    """The randomness coordinates that produced an instance."""

    master_seed: int
    counter: int

    def to_record(self) -> dict:
        return {"master_seed": self.master_seed, "counter": self.counter}

    @classmethod
    def from_record(cls, record: dict) -> "SeedPath":
        return cls(int(record["master_seed"]), int(record["counter"]))


@dataclass(frozen=True)
class ProblemInstance:
    env_id: str
    difficulty: int
    params: dict
    prompt: str
    reference_answer: Optional[str]
    seed_path: SeedPath

    def to_record(self) -> dict:
        # Field order is part of the serialization contract.
        record = {
            "env_id": self.env_id,
            "difficulty": self.difficulty,
            "params": self.params,
            "prompt": self.prompt,
        }
        if self.reference_answer is not None:
            record["reference_answer"] = self.reference_answer
        record["seed_path"] = self.seed_path.to_record()
        return record

    @classmethod
    def from_record(cls, record: dict) -> "ProblemInstance":
        return cls(
            env_id=record["env_id"],
            difficulty=int(record["difficulty"]),
            params=record["params"],
            prompt=record["prompt"],
            reference_answer=record.get("reference_answer"),
            seed_path=SeedPath.from_record(record["seed_path"]),
        )


@dataclass(frozen=True)
class EnvironmentDescriptor:
    env_id: str
    display_name: str
    category: str
    max_supported_difficulty: int
    has_planted_solution: bool
    reward_style: str  # "binary" or "graded"

    def __post_init__(self):
        if self.category not in ENV_CATEGORIES:
            raise ValueError(f"unknown environment category: {self.category!r}")
        if self.reward_style not in ("binary", "graded"):
            raise ValueError(f"unknown reward style: {self.reward_style!r}")
        if self.max_supported_difficulty < 0:
            raise ValueError("max_supported_difficulty must be non-negative")

    def to_record(self) -> dict:
        return {
            "env_id": self.env_id,
            "display_name": self.display_name,
            "category": self.category,
            "max_supported_difficulty": self.max_supported_difficulty,
            "has_planted_solution": self.has_planted_solution,
            "reward_style": self.reward_style,
        }
