"""Find an antiderivative of a given expression.

Generation exploits the solve-verify asymmetry: build F first, differentiate
symbolically, and show only F'.  Verification never integrates anything;
it differentiates the candidate and compares against F' numerically at
deterministic probe points inside the common safe domain.
"""

import math

from .base import Environment
from .. import expressions as ex
from ..errors import GenerationExhausted
from ..types import exact, graded, parse_failure

_PROMPT = """You are given the derivative of a function: F'(x) = {f_prime}

Your task is to find **an antiderivative** F(x) such that its derivative is equal to the given expression.

**Output Format:** Your answer should be the expression for F(x), written in **SymPy syntax**. Do not omit any symbols (e.g., always use `*` for multiplication).
Example: `sin(2*x)/2` (do **NOT** include quotes or backticks).
"""

# Probe candidates: a fixed low-discrepancy sweep of (-3, 3) avoiding 0.
_GOLDEN = (math.sqrt(5) - 1) / 2
_PROBE_CANDIDATES = tuple(
    round(-3.0 + 6.0 * ((0.137 + i * _GOLDEN) % 1.0), 9) for i in range(96)
)
_NUM_PROBES = 20
_MIN_COMMON_PROBES = 8
_REL_TOL = 1e-6

_UNARY_CHOICES = ("sin", "cos", "exp", "log", "sqrt", "neg")
_BINARY_CHOICES = ("add", "add", "sub", "mul", "mul", "div")


def _build_tree(rng, budget):
    """Random expression tree with exactly ``budget`` nodes."""
    if budget == 1:
        if rng.random() < 0.6:
            return ("x",)
        return ("const", rng.choice([c for c in range(-5, 6) if c != 0]))
    if budget == 2:
        return (rng.choice(_UNARY_CHOICES), _build_tree(rng, 1))
    roll = rng.random()
    if roll < 0.25:
        return (rng.choice(_UNARY_CHOICES), _build_tree(rng, budget - 1))
    if roll < 0.40 and budget >= 3:
        exponent = rng.randint(2, 4)
        return ("pow", _build_tree(rng, budget - 2), ("const", exponent))
    split = rng.randint(1, budget - 2)
    left = _build_tree(rng, split)
    right = _build_tree(rng, budget - 1 - split)
    return (rng.choice(_BINARY_CHOICES), left, right)


def safe_probe_points(tree, limit=_NUM_PROBES):
    """The first candidates where ``tree`` evaluates finitely."""
    points = []
    for x in _PROBE_CANDIDATES:
        try:
            ex.evaluate(tree, x)
        except ex.DomainError:
            continue
        points.append(x)
        if len(points) >= limit:
            break
    return points


def derivative_matches(candidate_derivative, f_prime_tree) -> bool:
    """Numeric equivalence on probe points where both sides are finite."""
    common = 0
    for x in _PROBE_CANDIDATES:
        try:
            want = ex.evaluate(f_prime_tree, x)
            got = ex.evaluate(candidate_derivative, x)
        except ex.DomainError:
            continue
        common += 1
        if abs(want - got) > _REL_TOL * max(1.0, abs(want), abs(got)):
            return False
        if common >= _NUM_PROBES:
            break
    return common >= _MIN_COMMON_PROBES


class IntegralEnv(Environment):
    env_id = "integral"
    display_name = "Integral"
    category = "math-operation"
    max_supported_difficulty = 30
    reward_style = "graded"

    # The paper uses d+2 nodes; a 2-node tree admits only a handful of
    # distinct prompts, too few for dataset exports, so the floor is 3.
    def node_budget(self, difficulty: int) -> int:
        return max(3, difficulty + 2)

    def generate(self, difficulty, rng):
        budget = self.node_budget(difficulty)
        for _ in range(500):
            tree = _build_tree(rng, budget)
            if not ex.contains_x(tree):
                continue
            f_prime = ex.differentiate(tree)
            if not ex.contains_x(f_prime) and f_prime == ("const", 0):
                continue  # constant F: the task degenerates
            if len(safe_probe_points(f_prime)) < _NUM_PROBES:
                continue
            rendered = ex.render(f_prime)
            if len(rendered) > 4000:
                continue
            params = {"node_count": budget, "f_prime": rendered}
            prompt = _PROMPT.format(f_prime=rendered)
            return params, prompt, ex.render(tree)
        raise GenerationExhausted(
            f"no usable expression tree at difficulty {difficulty}"
        )

    def verify(self, instance, output):
        text = self.extract(instance, output)
        if text is None:
            return parse_failure()
        try:
            candidate = ex.parse(text)
            f_prime = ex.parse(instance.params["f_prime"])
        except ex.ExprParseError as err:
            return parse_failure(str(err))
        derivative = ex.differentiate(candidate)
        if derivative_matches(derivative, f_prime):
            return exact()
        return graded(0.0, "derivative does not match F'")

    def corrupt_reference(self, instance, rng):
        # "+ x" rather than "+ constant": any constant shift is still a
        # valid antiderivative, so it would not be a wrong answer.
        return f"{instance.reference_answer} + x"

    def params_schema(self):
        return {"node_count": "expression tree size", "f_prime": "rendered derivative"}

    def answer_grammar(self):
        return "one line: an expression in x (explicit *, ** powers, sin/cos/exp/log/sqrt)"
