"""Shared environment machinery: base class, parse helpers, reward helpers."""

import random
from abc import ABC, abstractmethod
from typing import List, Optional, Tuple

from ..extraction import extract_answer
from ..types import (
    EnvironmentDescriptor,
    ProblemInstance,
    VerificationVerdict,
    exact,
    graded,
    parse_failure,
    structural_violation,
)

# Tolerance for treating a graded reward as exactly correct.
EXACT_EPS = 1e-9


class Environment(ABC):
    """One verifiable environment: a generator plus a verifier.

    Subclasses are stateless; all randomness comes in through explicit
    ``random.Random`` instances, so generation and verification are pure.
    """

    env_id: str
    display_name: str
    category: str
    max_supported_difficulty: int
    reward_style: str
    has_planted_solution: bool = True

    def descriptor(self) -> EnvironmentDescriptor:
        return EnvironmentDescriptor(
            env_id=self.env_id,
            display_name=self.display_name,
            category=self.category,
            max_supported_difficulty=self.max_supported_difficulty,
            has_planted_solution=self.has_planted_solution,
            reward_style=self.reward_style,
        )

    @abstractmethod
    def generate(self, difficulty: int, rng: random.Random) -> Tuple[dict, str, str]:
        """Return (params, prompt, reference_answer) at the given difficulty."""

    @abstractmethod
    def verify(self, instance: ProblemInstance, output: str) -> VerificationVerdict:
        """Score arbitrary output text against an instance."""

    def answer_line_count(self, instance: ProblemInstance) -> int:
        """How many trailing lines the extractor should take (1 for most)."""
        return 1

    def corrupt_reference(self, instance: ProblemInstance, rng: random.Random) -> str:
        """A near-miss wrong answer derived from the reference, used by
        synthetic policies.  Must parse but not score +1.0 (best effort)."""
        raise NotImplementedError

    def params_schema(self) -> dict:
        """Machine-readable description of the params record."""
        return {}

    def answer_grammar(self) -> str:
        """Human/machine-readable description of the expected answer format."""
        return "single line"

    def manifest(self) -> dict:
        record = self.descriptor().to_record()
        record["params_schema"] = self.params_schema()
        record["answer_grammar"] = self.answer_grammar()
        return record

    # Convenience used by verifiers
    def extract(self, instance: ProblemInstance, output: str) -> Optional[str]:
        return extract_answer(output, self.answer_line_count(instance))


def parse_int_token(text: str) -> Optional[int]:
    """A single integer token, or None."""
    token = text.strip()
    try:
        return int(token)
    except ValueError:
        return None


def parse_int_list(text: str) -> Optional[List[int]]:
    """Whitespace/comma-separated integers, or None if any token is bad."""
    tokens = text.replace(",", " ").split()
    if not tokens:
        return None
    values = []
    for token in tokens:
        try:
            values.append(int(token))
        except ValueError:
            return None
    return values


def ratio_power_verdict(truth: int, answer: int, power: int) -> VerificationVerdict:
    """The smooth (min/max)^power reward for non-negative integer answers.

    Conventions at zero (the formula is undefined at max=0): both zero is a
    perfect answer (+1.0); exactly one zero scores 0.0.
    """
    if answer == truth:
        return exact()
    if truth == 0 or answer == 0:
        return graded(0.0, f"expected {truth}, got {answer}")
    low, high = sorted((truth, answer))
    return graded((low / high) ** power, f"expected {truth}, got {answer}")


def fraction_power_verdict(numerator: int, denominator: int, power: int,
                           detail: Optional[str] = None) -> VerificationVerdict:
    """(numerator/denominator)^power with Exact at a full score."""
    if numerator == denominator:
        return exact()
    return graded((numerator / denominator) ** power, detail)


def perturb_integer_digit(value: int, rng: random.Random) -> str:
    """Nudge one decimal digit of ``value``, keeping sign and digit count."""
    sign = "-" if value < 0 else ""
    digits = list(str(abs(value)))
    pos = rng.randrange(len(digits))
    new = (int(digits[pos]) + 1) % 10
    if pos == 0 and new == 0 and len(digits) > 1:
        new = 1  # keep the leading digit nonzero
    digits[pos] = str(new)
    return sign + "".join(digits)


def swap_two_positions(values: list, rng: random.Random) -> list:
    """Swap two positions holding distinct values; identity if impossible."""
    distinct = sorted(set(values))
    swapped = list(values)
    if len(distinct) < 2:
        return swapped
    while True:
        i, j = rng.randrange(len(values)), rng.randrange(len(values))
        if swapped[i] != swapped[j]:
            swapped[i], swapped[j] = swapped[j], swapped[i]
            return swapped
