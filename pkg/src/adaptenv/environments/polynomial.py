"""Minimize an even-degree polynomial with positive leading coefficient.

The true minimizer is found numerically: real roots of f' (via the
companion-matrix eigenvalues), polished with a few Newton steps, then the
candidate with the smallest f value wins.  The reward compares improvement
over the trivial point x=0:  ((f(0) - f(x0)) / (f(0) - f(x0')))^5,
clamped into [-1, 1].
"""

import math

import numpy as np

from .base import Environment, EXACT_EPS
from ..errors import GenerationExhausted
from ..types import exact, graded, parse_failure

_PROMPT = """Given f(x) = {polynomial}, find the value of x0 that minimizes f(x).
Your final answer should be a single real number in decimal form, representing the value of x0.
"""


def render_polynomial(coefficients) -> str:
    """Constant-first coefficients to explicit-* infix, highest power first."""
    terms = []
    for power in range(len(coefficients) - 1, -1, -1):
        c = coefficients[power]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        magnitude = abs(c)
        if power == 0:
            body = str(magnitude)
        elif power == 1:
            body = "x" if magnitude == 1 else f"{magnitude}*x"
        else:
            body = f"x**{power}" if magnitude == 1 else f"{magnitude}*x**{power}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first_body = terms[0]
    rendered = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        rendered += f" {sign} {body}"
    return rendered


def evaluate_polynomial(coefficients, x: float) -> float:
    value = 0.0
    for c in reversed(coefficients):
        value = value * x + c
    return value


def true_minimizer(coefficients) -> float:
    """Global minimizer of an even-degree polynomial with positive lead."""
    derivative = [i * c for i, c in enumerate(coefficients)][1:]
    roots = np.roots(list(reversed(derivative)))
    candidates = [float(r.real) for r in roots if abs(r.imag) < 1e-8]
    # polish with Newton steps on f'
    second = [i * c for i, c in enumerate(derivative)][1:]
    polished = []
    for x in candidates:
        for _ in range(3):
            fp = evaluate_polynomial(derivative, x)
            fpp = evaluate_polynomial(second, x)
            if fpp == 0 or not math.isfinite(fp) or not math.isfinite(fpp):
                break
            x = x - fp / fpp
        polished.append(x)
    return min(polished, key=lambda x: evaluate_polynomial(coefficients, x))


def minimization_reward(coefficients, x0: float) -> float:
    """The clamped quality^5 reward for a predicted minimizer."""
    best = true_minimizer(coefficients)
    f_trivial = evaluate_polynomial(coefficients, 0.0)
    f_best = evaluate_polynomial(coefficients, best)
    f_predicted = evaluate_polynomial(coefficients, x0)
    if not math.isfinite(f_predicted):
        return -1.0
    quality = (f_trivial - f_predicted) / (f_trivial - f_best)
    if quality <= -1.0:
        return -1.0  # clamp before powering; quality^5 can overflow
    reward = quality ** 5
    return max(-1.0, min(1.0, reward))


class PolynomialMinimumEnv(Environment):
    env_id = "polynomial_minimum"
    display_name = "PolynomialMinimum"
    category = "optimization"
    max_supported_difficulty = 8
    reward_style = "graded"

    def generate(self, difficulty, rng):
        degree = 2 * (difficulty + 1)
        for _ in range(1000):
            coefficients = [rng.randint(-9, 9) for _ in range(degree)]
            coefficients.append(rng.randint(1, 9))
            best = true_minimizer(coefficients)
            f_trivial = evaluate_polynomial(coefficients, 0.0)
            f_best = evaluate_polynomial(coefficients, best)
            if f_trivial - f_best < 1e-3:
                continue  # degenerate reward denominator
            reference = f"{best:.6f}"
            # the 6-decimal rounding must still score as exactly correct
            if abs(minimization_reward(coefficients, float(reference)) - 1.0) > EXACT_EPS:
                continue
            params = {"degree": degree, "coefficients": coefficients}
            prompt = _PROMPT.format(polynomial=render_polynomial(coefficients))
            return params, prompt, reference
        raise GenerationExhausted(
            f"no well-conditioned polynomial at difficulty {difficulty}"
        )

    def verify(self, instance, output):
        text = self.extract(instance, output)
        if text is None:
            return parse_failure()
        try:
            x0 = float(text)
        except ValueError:
            return parse_failure("not a number")
        if not math.isfinite(x0):
            return parse_failure("not a finite number")
        reward = minimization_reward(instance.params["coefficients"], x0)
        if abs(reward - 1.0) <= EXACT_EPS:
            return exact()
        return graded(reward)

    def corrupt_reference(self, instance, rng):
        return f"{float(instance.reference_answer) + 0.5:.6f}"

    def params_schema(self):
        return {
            "degree": "polynomial degree 2(d+1)",
            "coefficients": "integer coefficients, constant term first",
        }

    def answer_grammar(self):
        return "one line: a real number in decimal form"
