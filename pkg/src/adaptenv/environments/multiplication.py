"""Multiply two d+1 digit integers; smooth ratio reward."""

from .base import Environment, parse_int_token, perturb_integer_digit, ratio_power_verdict
from ..types import parse_failure

_PROMPT = """Compute the product of the two numbers below:
{a} * {b}

**Output Format:**
Your final answer should be a single line containing one non-negative integer, the exact product.
Example: 42
"""


class MultiplicationEnv(Environment):
    env_id = "multiplication"
    display_name = "Multiplication"
    category = "math-operation"
    max_supported_difficulty = 38
    reward_style = "graded"

    def generate(self, difficulty, rng):
        a = rng.randint(10 ** difficulty, 10 ** (difficulty + 1) - 1)
        b = rng.randint(10 ** difficulty, 10 ** (difficulty + 1) - 1)
        params = {"a": a, "b": b}
        prompt = _PROMPT.format(a=a, b=b)
        return params, prompt, str(a * b)

    def verify(self, instance, output):
        text = self.extract(instance, output)
        if text is None:
            return parse_failure()
        answer = parse_int_token(text)
        if answer is None or answer < 0:
            return parse_failure("not a non-negative integer")
        truth = instance.params["a"] * instance.params["b"]
        return ratio_power_verdict(truth, answer, 10)

    def corrupt_reference(self, instance, rng):
        truth = instance.params["a"] * instance.params["b"]
        return perturb_integer_digit(truth, rng)

    def params_schema(self):
        return {"a": "first operand, d+1 digits", "b": "second operand, d+1 digits"}

    def answer_grammar(self):
        return "one line: a single non-negative integer"
