"""Count permutations meeting the bubble-sort swap lower bound and a
lexicographic constraint.

The verifier's ground truth is an exhaustive enumeration over all N!
permutations, memoized per N; the difficulty cap keeps N <= 9 so the table
stays small.  A permutation p meets the lower bound exactly when its
inversion count equals LB(p) = sum(|i - p_i|) / 2.
"""

import itertools
from bisect import bisect_right
from functools import lru_cache

from .base import Environment, parse_int_token, perturb_integer_digit, ratio_power_verdict
from ..types import parse_failure

_PROMPT = """Consider bubble sort on a permutation p[1..{N}] using the standard double loop:
```
for i = 1 to N:
  for j = 1 to N-1:
    if p[j] > p[j+1]: swap p[j], p[j+1]
```
It is known that the number of swaps performed by this algorithm is at least
LB(p) = (abs(1 - p[1]) + abs(2 - p[2]) + ... + abs(N - p[N])) / 2.
Tell me the number of permutations p of 1, 2, ..., {N} that satisfy BOTH:
1) The bubble sort swap count equals the lower bound: swaps(p) = LB(p).
2) p is lexicographically strictly greater than the given permutation P: {P}.

**Output Format:**
Your final answer should be a single line containing one non-negative integer.
Example: 4
"""


def inversions(perm) -> int:
    return sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )


def displacement_bound(perm) -> int:
    return sum(abs(i + 1 - v) for i, v in enumerate(perm)) // 2


@lru_cache(maxsize=None)
def tight_permutations(n: int):
    """All permutations of 1..n whose swap count equals the lower bound,
    in lexicographic order."""
    if n >= 8:
        # vectorized filter; itertools yields lexicographic order already
        import numpy as np

        perms = np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int8)
        bound = np.abs(perms - np.arange(1, n + 1, dtype=np.int8)).sum(
            axis=1, dtype=np.int32
        ) // 2
        swap_count = np.zeros(len(perms), dtype=np.int32)
        for i in range(n):
            for j in range(i + 1, n):
                swap_count += perms[:, i] > perms[:, j]
        return tuple(map(tuple, perms[swap_count == bound].tolist()))
    return tuple(
        perm
        for perm in itertools.permutations(range(1, n + 1))
        if inversions(perm) == displacement_bound(perm)
    )


def count_tight_above(p) -> int:
    """How many lower-bound-tight permutations are lexicographically
    strictly greater than p."""
    table = tight_permutations(len(p))
    return len(table) - bisect_right(table, tuple(p))


class BubbleSwapEnv(Environment):
    env_id = "bubbleswap_lowerbound_permutation_counting"
    display_name = "BubbleSwapLowerBound_PermutationCounting"
    category = "programming-competition"
    max_supported_difficulty = 6
    reward_style = "graded"

    # The paper sets N = d+3; N=3 admits only 6 distinct prompts, too few
    # for even-coverage dataset exports, so d=0 is lifted to N=4.
    def permutation_length(self, difficulty: int) -> int:
        return max(4, difficulty + 3)

    def generate(self, difficulty, rng):
        n = self.permutation_length(difficulty)
        p = list(range(1, n + 1))
        rng.shuffle(p)
        params = {"n": n, "p": p}
        prompt = _PROMPT.format(N=n, P=" ".join(str(v) for v in p))
        return params, prompt, str(count_tight_above(p))

    def verify(self, instance, output):
        text = self.extract(instance, output)
        if text is None:
            return parse_failure()
        answer = parse_int_token(text)
        if answer is None or answer < 0:
            return parse_failure("not a non-negative integer")
        truth = count_tight_above(instance.params["p"])
        return ratio_power_verdict(truth, answer, 10)

    def corrupt_reference(self, instance, rng):
        truth = count_tight_above(instance.params["p"])
        return perturb_integer_digit(truth, rng)

    def params_schema(self):
        return {"n": "permutation length", "p": "the comparison permutation of 1..n"}

    def answer_grammar(self):
        return "one line: a single non-negative integer"
