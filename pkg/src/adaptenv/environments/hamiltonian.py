"""Find a Hamiltonian path in a directed graph with a planted path."""

from .base import Environment, parse_int_list
from ..types import exact, parse_failure, structural_violation
from ..types import graded

_PROMPT = """You are given a **directed graph** with {N} vertices labeled from `0` to `{N_minus_1}`.
The graph contains the following directed edges.
Each edge is represented as a tuple `(s, t)`, meaning there is a directed edge **from vertex `s` to vertex `t`**:
{edges}

Please find a path `p_1, p_2, ..., p_{N}` such that the path **visits every vertex exactly once** (revisiting vertices is NOT allowed).

**Output Format:**
Your final answer should be a single line containing the path in order: `p_1, p_2, ..., p_{N}`, separated by **spaces**.
Example: `0 2 1` (do **NOT** include backticks or quotes); this means the path starts at vertex 0, then goes to vertex 2, and finally to vertex 1 (assuming 3 vertices in total).
"""


class HamiltonianPathEnv(Environment):
    env_id = "hamiltonian_path_existence"
    display_name = "HamiltonianPathExistence"
    category = "np-complete"
    max_supported_difficulty = 60
    reward_style = "graded"

    def generate(self, difficulty, rng):
        n = difficulty + 3
        order = list(range(n))
        rng.shuffle(order)
        edge_set = {(order[i], order[i + 1]) for i in range(n - 1)}
        q = min(0.5, 3 / n)
        for s in range(n):
            for t in range(n):
                if s != t and (s, t) not in edge_set and rng.random() < q:
                    edge_set.add((s, t))
        edges = sorted(edge_set)
        params = {"n": n, "edges": [list(e) for e in edges]}
        rendered = "\n".join(f"({s}, {t})" for s, t in edges)
        prompt = _PROMPT.format(N=n, N_minus_1=n - 1, edges=rendered)
        reference = " ".join(str(v) for v in order)
        return params, prompt, reference

    def verify(self, instance, output):
        text = self.extract(instance, output)
        if text is None:
            return parse_failure()
        values = parse_int_list(text)
        if values is None:
            return parse_failure("not a list of integers")
        n = instance.params["n"]
        if sorted(values) != list(range(n)):
            return structural_violation(-0.5, f"not a permutation of 0..{n - 1}")
        edge_set = {tuple(e) for e in instance.params["edges"]}
        hits = sum(
            1 for a, b in zip(values, values[1:]) if (a, b) in edge_set
        )
        if hits == n - 1:
            return exact()
        return graded((hits / (n - 1)) ** 5, f"{hits}/{n - 1} edges present")

    def corrupt_reference(self, instance, rng):
        path = [int(v) for v in instance.reference_answer.split()]
        i, j = rng.sample(range(len(path)), 2)
        path[i], path[j] = path[j], path[i]
        return " ".join(str(v) for v in path)

    def params_schema(self):
        return {"n": "vertex count", "edges": "directed edge list [s, t]"}

    def answer_grammar(self):
        return "one line: n vertex labels separated by spaces"
