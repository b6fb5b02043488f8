"""Sort a list of integers; graded by matching positions."""

import math
import random

from .base import Environment, parse_int_list, swap_two_positions
from ..types import (
    ProblemInstance,
    VerificationVerdict,
    exact,
    graded,
    parse_failure,
    structural_violation,
)

_PROMPT = """You are given the following list of numbers:
{array}
Please sort them in **ascending order**.

**Output Format:**
Your final answer should be a single line containing the sorted numbers, separated by spaces.
Example: 1 2 3 4 5
"""


def length_for_difficulty(d: int) -> int:
    # round-half-up on 3 * 1.1^d, never below 2
    return max(2, math.floor(3 * 1.1 ** d + 0.5))


class SortingEnv(Environment):
    env_id = "sorting"
    display_name = "Sorting"
    category = "classical-algorithm"
    max_supported_difficulty = 60
    reward_style = "graded"

    def generate(self, difficulty, rng):
        n = length_for_difficulty(difficulty)
        array = [rng.randint(-10 * n, 10 * n) for _ in range(n)]
        params = {"n": n, "array": array}
        prompt = _PROMPT.format(array=" ".join(str(v) for v in array))
        reference = " ".join(str(v) for v in sorted(array))
        return params, prompt, reference

    def verify(self, instance, output):
        text = self.extract(instance, output)
        if text is None:
            return parse_failure()
        values = parse_int_list(text)
        if values is None:
            return parse_failure("not a list of integers")
        expected = sorted(instance.params["array"])
        n = instance.params["n"]
        if len(values) != n:
            return structural_violation(-0.5, f"expected {n} numbers, got {len(values)}")
        matches = sum(1 for a, b in zip(values, expected) if a == b)
        if matches == n:
            return exact()
        return graded((matches / n) ** 10, f"{matches}/{n} positions correct")

    def corrupt_reference(self, instance, rng):
        expected = sorted(instance.params["array"])
        swapped = swap_two_positions(expected, rng)
        if swapped == expected:
            swapped = expected + [expected[-1]]  # all-equal array: break the length
        return " ".join(str(v) for v in swapped)

    def params_schema(self):
        return {"n": "array length", "array": "sequence of integers in [-10n, 10n]"}

    def answer_grammar(self):
        return "one line: n integers separated by spaces, ascending"
