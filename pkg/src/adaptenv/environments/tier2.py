"""Nine additional environments sharing one template: planted or oracle
solutions, ParseFailure -1.0, structural violations -0.5, binary answers
{+1.0, 0.0}, graded answers quality^5.
"""

import heapq
from bisect import bisect_left, bisect_right, insort

from .base import (
    Environment,
    parse_int_list,
    parse_int_token,
    perturb_integer_digit,
)
from ..types import exact, graded, parse_failure, structural_violation

_SMALL_PRIME_LIMIT = 1000


def _sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, int(limit ** 0.5) + 1):
        if flags[p]:
            flags[p * p::p] = bytearray(len(flags[p * p::p]))
    return [i for i, keep in enumerate(flags) if keep]


_PRIMES = _sieve(_SMALL_PRIME_LIMIT)


class ChineseRemainderEnv(Environment):
    env_id = "crt"
    display_name = "ChineseRemainderTheorem"
    category = "math-operation"
    max_supported_difficulty = 400
    reward_style = "binary"

    _PROMPT = """Find the smallest non-negative integer x that satisfies all of the following congruences:
{congruences}

**Output Format:**
Your final answer should be a single line containing one non-negative integer.
Example: 23
"""

    def moduli_count(self, difficulty: int) -> int:
        return 2 + difficulty // 6

    def generate(self, difficulty, rng):
        k = self.moduli_count(difficulty)
        pool = _PRIMES[: min(len(_PRIMES), max(12, 2 * k))]
        moduli = rng.sample(pool, k)
        modulus_product = 1
        for m in moduli:
            modulus_product *= m
        x = rng.randrange(modulus_product)
        residues = [x % m for m in moduli]
        params = {"moduli": moduli, "residues": residues}
        lines = "\n".join(
            f"x = {r} (mod {m})" for r, m in zip(residues, moduli)
        )
        prompt = self._PROMPT.format(congruences=lines)
        return params, prompt, str(x)

    def verify(self, instance, output):
        text = self.extract(instance, output)
        if text is None:
            return parse_failure()
        answer = parse_int_token(text)
        if answer is None or answer < 0:
            return parse_failure("not a non-negative integer")
        truth = int(instance.reference_answer) if instance.reference_answer is not None \
            else self._solve(instance.params)
        if answer == truth:
            return exact()
        return graded(0.0, f"expected {truth}")

    @staticmethod
    def _solve(params):
        # incremental CRT combine; moduli are distinct primes
        x, modulus = 0, 1
        for m, r in zip(params["moduli"], params["residues"]):
            step = pow(modulus, -1, m) * ((r - x) % m) % m
            x += modulus * step
            modulus *= m
        return x

    def corrupt_reference(self, instance, rng):
        return perturb_integer_digit(int(instance.reference_answer), rng)

    def params_schema(self):
        return {"moduli": "distinct primes", "residues": "x mod each modulus"}

    def answer_grammar(self):
        return "one line: a single non-negative integer"


class JosephusEnv(Environment):
    env_id = "josephus"
    display_name = "Josephus"
    category = "logic-puzzle"
    max_supported_difficulty = 400
    reward_style = "binary"

    _PROMPT = """{n} people stand in a circle, numbered 1 to {n} clockwise.
Starting the count at person 1, every {k}-th person is eliminated and the circle closes up.
Counting continues clockwise from the next person after each elimination.
Which person is the last one remaining?

**Output Format:**
Your final answer should be a single line containing one integer, the number of the surviving person.
Example: 3
"""

    def generate(self, difficulty, rng):
        n = difficulty + 3
        k = rng.randint(2, 10 * n)
        survivor = 0
        for i in range(2, n + 1):
            survivor = (survivor + k) % i
        params = {"n": n, "k": k}
        prompt = self._PROMPT.format(n=n, k=k)
        return params, prompt, str(survivor + 1)

    def verify(self, instance, output):
        text = self.extract(instance, output)
        if text is None:
            return parse_failure()
        answer = parse_int_token(text)
        if answer is None:
            return parse_failure("not an integer")
        if answer == int(instance.reference_answer):
            return exact()
        return graded(0.0, f"expected {instance.reference_answer}")

    def corrupt_reference(self, instance, rng):
        return perturb_integer_digit(int(instance.reference_answer), rng)

    def params_schema(self):
        return {"n": "circle size", "k": "elimination step"}

    def answer_grammar(self):
        return "one line: a single integer in 1..n"


class InversionPairEnv(Environment):
    env_id = "inversion_pair"
    display_name = "InversionPair"
    category = "programming-competition"
    max_supported_difficulty = 400
    reward_style = "binary"

    _PROMPT = """You are given the following array of integers:
{array}
Count the number of inversion pairs: pairs of indices (i, j) with i < j whose elements satisfy a[i] > a[j].

**Output Format:**
Your final answer should be a single line containing one non-negative integer.
Example: 5
"""

    def generate(self, difficulty, rng):
        n = difficulty + 3
        # inline rejection sampling, stream-identical to rng.randrange(bound)
        # but without its per-call overhead (this loop dominates simulation
        # profiles at high difficulty)
        bound = 10 * n + 1
        bits = bound.bit_length()
        getrandbits = rng.getrandbits
        array = []
        for _ in range(n):
            value = getrandbits(bits)
            while value >= bound:
                value = getrandbits(bits)
            array.append(value)
        count = 0
        seen = []
        for value in array:
            count += len(seen) - bisect_right(seen, value)
            insort(seen, value)
        params = {"n": n, "array": array}
        prompt = self._PROMPT.format(array=" ".join(str(v) for v in array))
        return params, prompt, str(count)

    def verify(self, instance, output):
        text = self.extract(instance, output)
        if text is None:
            return parse_failure()
        answer = parse_int_token(text)
        if answer is None or answer < 0:
            return parse_failure("not a non-negative integer")
        if answer == int(instance.reference_answer):
            return exact()
        return graded(0.0, f"expected {instance.reference_answer}")

    def corrupt_reference(self, instance, rng):
        return perturb_integer_digit(int(instance.reference_answer), rng)

    def params_schema(self):
        return {"n": "array length", "array": "integers in [0, 10n]"}

    def answer_grammar(self):
        return "one line: a single non-negative integer"


class SubsetSumEnv(Environment):
    env_id = "subset_sum"
    display_name = "SubsetSum"
    category = "np-complete"
    max_supported_difficulty = 400
    reward_style = "binary"

    _PROMPT = """You are given {n} numbers, indexed from 0 to {n_minus_1}:
{values}
Find a subset of indices whose values sum to exactly {target}. At least one such subset exists.

**Output Format:**
Your final answer should be a single line containing the chosen indices (0-based), separated by spaces.
Example: 0 2 3
"""

    def generate(self, difficulty, rng):
        n = difficulty + 3
        # stream-identical to [rng.randrange(1, 21) for _ in range(n)],
        # inlined for speed (hot in simulation profiles)
        getrandbits = rng.getrandbits
        values = []
        for _ in range(n):
            value = getrandbits(5)
            while value >= 20:
                value = getrandbits(5)
            values.append(value + 1)
        chosen = [i for i in range(n) if rng.random() < 0.5]
        if not chosen:
            chosen = [rng.randrange(n)]
        target = sum(values[i] for i in chosen)
        params = {"n": n, "values": values, "target": target}
        prompt = self._PROMPT.format(
            n=n,
            n_minus_1=n - 1,
            values=" ".join(str(v) for v in values),
            target=target,
        )
        return params, prompt, " ".join(str(i) for i in chosen)

    def verify(self, instance, output):
        text = self.extract(instance, output)
        if text is None:
            return parse_failure()
        indices = parse_int_list(text)
        if indices is None:
            return parse_failure("not a list of integers")
        n = instance.params["n"]
        if len(set(indices)) != len(indices) or any(not 0 <= i < n for i in indices):
            return structural_violation(-0.5, "not a subset of valid indices")
        total = sum(instance.params["values"][i] for i in indices)
        if total == instance.params["target"]:
            return exact()
        return graded(0.0, f"sum {total} != target {instance.params['target']}")

    def corrupt_reference(self, instance, rng):
        chosen = [int(i) for i in instance.reference_answer.split()]
        if len(chosen) > 1:
            chosen = chosen[1:]
        else:
            values = instance.params["values"]
            i = chosen[0]
            others = [j for j in range(len(values)) if values[j] != values[i]]
            chosen = [rng.choice(others)] if others else [i, i]  # dup -> -0.5
        return " ".join(str(i) for i in chosen)

    def params_schema(self):
        return {"n": "item count", "values": "positive integers", "target": "planted sum"}

    def answer_grammar(self):
        return "one line: 0-based indices separated by spaces"


class SatisfiabilityEnv(Environment):
    env_id = "sat"
    display_name = "Satisfiability"
    category = "np-complete"
    max_supported_difficulty = 60
    reward_style = "graded"

    _PROMPT = """Consider {n} boolean variables x1 .. x{n} and the following {m} clauses.
Each clause lists three literals; a positive number i means xi and a negative number -i means NOT xi.
A clause is satisfied when at least one of its literals is true.
{clauses}
Find an assignment satisfying all clauses. At least one such assignment exists.

**Output Format:**
Your final answer should be a single line with {n} values, each 0 or 1, separated by spaces; the i-th value is the value of xi.
Example: 1 0 1
"""

    def generate(self, difficulty, rng):
        n = difficulty + 3
        m = 4 * n
        assignment = [rng.randint(0, 1) for _ in range(n)]
        clauses = []
        for _ in range(m):
            variables = rng.sample(range(n), 3)
            clause = [
                (v + 1) if rng.random() < 0.5 else -(v + 1) for v in variables
            ]
            if not self._clause_satisfied(clause, assignment):
                flip = rng.randrange(3)
                clause[flip] = -clause[flip]
            clauses.append(clause)
        params = {"n": n, "m": m, "clauses": clauses}
        rendered = "\n".join(
            "(" + " OR ".join(str(l) for l in clause) + ")" for clause in clauses
        )
        prompt = self._PROMPT.format(n=n, m=m, clauses=rendered)
        return params, prompt, " ".join(str(v) for v in assignment)

    @staticmethod
    def _clause_satisfied(clause, assignment):
        return any(
            assignment[abs(l) - 1] == (1 if l > 0 else 0) for l in clause
        )

    def verify(self, instance, output):
        text = self.extract(instance, output)
        if text is None:
            return parse_failure()
        values = parse_int_list(text)
        if values is None:
            return parse_failure("not a list of integers")
        n, m = instance.params["n"], instance.params["m"]
        if len(values) != n or any(v not in (0, 1) for v in values):
            return structural_violation(-0.5, f"expected {n} values of 0/1")
        satisfied = sum(
            1
            for clause in instance.params["clauses"]
            if self._clause_satisfied(clause, values)
        )
        if satisfied == m:
            return exact()
        return graded((satisfied / m) ** 5, f"{satisfied}/{m} clauses satisfied")

    def corrupt_reference(self, instance, rng):
        values = [int(v) for v in instance.reference_answer.split()]
        # flip a variable that is the sole satisfier of some clause, so the
        # corrupted assignment provably misses at least one clause
        sole_satisfiers = set()
        for clause in instance.params["clauses"]:
            satisfying = [
                l for l in clause if values[abs(l) - 1] == (1 if l > 0 else 0)
            ]
            if len(satisfying) == 1:
                sole_satisfiers.add(abs(satisfying[0]) - 1)
        if sole_satisfiers:
            values[rng.choice(sorted(sole_satisfiers))] ^= 1
            return " ".join(str(v) for v in values)
        return " ".join(str(v) for v in values[:-1])  # wrong arity -> -0.5

    def params_schema(self):
        return {"n": "variable count", "m": "clause count 4n", "clauses": "3 literals each"}

    def answer_grammar(self):
        return "one line: n values of 0/1 separated by spaces"


class KnapsackEnv(Environment):
    env_id = "knapsack"
    display_name = "Knapsack"
    category = "np-complete"
    max_supported_difficulty = 30
    reward_style = "graded"

    _PROMPT = """You are given {n} items, indexed from 0 to {n_minus_1}, and a knapsack of capacity {capacity}.
Item weights: {weights}
Item values: {values}
Choose a subset of items with total weight at most {capacity} that maximizes total value.

**Output Format:**
Your final answer should be a single line containing the chosen item indices (0-based), separated by spaces.
Example: 0 2 3
"""

    def generate(self, difficulty, rng):
        n = difficulty + 3
        weights = [rng.randint(1, 12) for _ in range(n)]
        values = [rng.randint(1, 30) for _ in range(n)]
        capacity = sum(weights) // 2
        best_value, chosen = self._solve(weights, values, capacity)
        params = {
            "n": n,
            "weights": weights,
            "values": values,
            "capacity": capacity,
        }
        prompt = self._PROMPT.format(
            n=n,
            n_minus_1=n - 1,
            capacity=capacity,
            weights=" ".join(str(w) for w in weights),
            values=" ".join(str(v) for v in values),
        )
        return params, prompt, " ".join(str(i) for i in chosen)

    @staticmethod
    def _solve(weights, values, capacity):
        n = len(weights)
        table = [[0] * (capacity + 1)]
        for i in range(n):
            previous = table[-1]
            row = previous[:]
            w, v = weights[i], values[i]
            for c in range(w, capacity + 1):
                candidate = previous[c - w] + v
                if candidate > row[c]:
                    row[c] = candidate
            table.append(row)
        chosen = []
        c = capacity
        for i in range(n - 1, -1, -1):
            if table[i + 1][c] != table[i][c]:
                chosen.append(i)
                c -= weights[i]
        chosen.reverse()
        return table[n][capacity], chosen

    def verify(self, instance, output):
        text = self.extract(instance, output)
        if text is None:
            return parse_failure()
        indices = parse_int_list(text)
        if indices is None:
            return parse_failure("not a list of integers")
        params = instance.params
        n = params["n"]
        if len(set(indices)) != len(indices) or any(not 0 <= i < n for i in indices):
            return structural_violation(-0.5, "not a subset of valid indices")
        weight = sum(params["weights"][i] for i in indices)
        if weight > params["capacity"]:
            return structural_violation(-0.5, "total weight exceeds capacity")
        achieved = sum(params["values"][i] for i in indices)
        optimal, _ = self._solve(
            params["weights"], params["values"], params["capacity"]
        )
        if achieved == optimal:
            return exact()
        return graded((achieved / optimal) ** 5, f"value {achieved}, optimal {optimal}")

    def corrupt_reference(self, instance, rng):
        chosen = [int(i) for i in instance.reference_answer.split()]
        if len(chosen) > 1:
            return " ".join(str(i) for i in chosen[1:])
        return " ".join(str(i) for i in range(instance.params["n"]))  # overweight

    def params_schema(self):
        return {
            "n": "item count",
            "weights": "1..12 each",
            "values": "1..30 each",
            "capacity": "half the total weight",
        }

    def answer_grammar(self):
        return "one line: 0-based indices separated by spaces"


class ShortestPathEnv(Environment):
    env_id = "shortest_path"
    display_name = "ShortestPath"
    category = "classical-algorithm"
    max_supported_difficulty = 60
    reward_style = "graded"

    _PROMPT = """You are given a directed graph with {n} vertices labeled from 0 to {n_minus_1}.
Each edge is listed as a tuple (s, t, w): a directed edge from s to t with weight w:
{edges}

Find a path of minimum total weight from vertex 0 to vertex {n_minus_1}. At least one path exists.

**Output Format:**
Your final answer should be a single line containing the vertices of the path in order, separated by spaces.
Example: 0 3 2 5
"""

    def generate(self, difficulty, rng):
        n = difficulty + 3
        interior = list(range(1, n - 1))
        rng.shuffle(interior)
        hops = rng.randint(0, len(interior))
        backbone = [0] + interior[:hops] + [n - 1]
        weight = {}
        for a, b in zip(backbone, backbone[1:]):
            weight[(a, b)] = rng.randint(1, 10)
        q = min(0.5, 3 / n)
        for s in range(n):
            for t in range(n):
                if s != t and (s, t) not in weight and rng.random() < q:
                    weight[(s, t)] = rng.randint(1, 10)
        edges = sorted((s, t, w) for (s, t), w in weight.items())
        params = {"n": n, "edges": [list(e) for e in edges]}
        rendered = "\n".join(f"({s}, {t}, {w})" for s, t, w in edges)
        prompt = self._PROMPT.format(n=n, n_minus_1=n - 1, edges=rendered)
        reference = self._shortest_path(n, edges)
        return params, prompt, " ".join(str(v) for v in reference)

    @staticmethod
    def _shortest_path(n, edges):
        adjacency = [[] for _ in range(n)]
        for s, t, w in edges:
            adjacency[s].append((t, w))
        distance = [None] * n
        heap = [(0, 0)]
        while heap:
            d, u = heapq.heappop(heap)
            if distance[u] is not None:
                continue
            distance[u] = d
            if u == n - 1:
                break
            for t, w in adjacency[u]:
                if distance[t] is None:
                    heapq.heappush(heap, (d + w, t))
        # walk back along tight edges (distance[s] + w == distance[t])
        path = [n - 1]
        while path[-1] != 0:
            u = path[-1]
            best = None
            for s, t, w in edges:
                if t == u and distance[s] is not None and distance[s] + w == distance[u]:
                    best = s
                    break
            path.append(best)
        path.reverse()
        return path

    def _optimal_distance(self, params):
        n = params["n"]
        edges = [tuple(e) for e in params["edges"]]
        adjacency = [[] for _ in range(n)]
        for s, t, w in edges:
            adjacency[s].append((t, w))
        distance = [None] * n
        heap = [(0, 0)]
        while heap:
            d, u = heapq.heappop(heap)
            if distance[u] is not None:
                continue
            distance[u] = d
            for t, w in adjacency[u]:
                if distance[t] is None:
                    heapq.heappush(heap, (d + w, t))
        return distance[n - 1]

    def verify(self, instance, output):
        text = self.extract(instance, output)
        if text is None:
            return parse_failure()
        path = parse_int_list(text)
        if path is None:
            return parse_failure("not a list of integers")
        params = instance.params
        n = params["n"]
        weight = {(s, t): w for s, t, w in (tuple(e) for e in params["edges"])}
        if (
            len(path) < 2
            or path[0] != 0
            or path[-1] != n - 1
            or any(not 0 <= v < n for v in path)
            or any((a, b) not in weight for a, b in zip(path, path[1:]))
        ):
            return structural_violation(-0.5, "not a valid path from 0 to n-1")
        achieved = sum(weight[(a, b)] for a, b in zip(path, path[1:]))
        optimal = self._optimal_distance(params)
        if achieved == optimal:
            return exact()
        return graded((optimal / achieved) ** 5, f"length {achieved}, optimal {optimal}")

    def corrupt_reference(self, instance, rng):
        path = [int(v) for v in instance.reference_answer.split()]
        if len(path) >= 4:
            i, j = rng.sample(range(1, len(path) - 1), 2)
            path[i], path[j] = path[j], path[i]
        else:
            path.reverse()
        return " ".join(str(v) for v in path)

    def params_schema(self):
        return {"n": "vertex count", "edges": "directed weighted edges [s, t, w]"}

    def answer_grammar(self):
        return "one line: path vertices separated by spaces"


class MinimumSpanningTreeEnv(Environment):
    env_id = "minimum_spanning_tree"
    display_name = "MinimumSpanningTree"
    category = "classical-algorithm"
    max_supported_difficulty = 60
    reward_style = "graded"

    _PROMPT = """You are given a connected undirected graph with {n} vertices labeled from 0 to {n_minus_1}.
Each edge is listed as a tuple (u, v, w): an undirected edge between u and v with weight w:
{edges}

Find a spanning tree of minimum total weight.

**Output Format:**
Your final answer should be a single line listing the {n_minus_1} chosen edges as pairs of endpoints, all separated by spaces: u1 v1 u2 v2 ...
Example: 0 1 1 2 2 3
"""

    def generate(self, difficulty, rng):
        n = difficulty + 3
        weight = {}
        for v in range(1, n):
            u = rng.randrange(v)
            weight[(u, v)] = rng.randint(1, 20)
        q = min(0.5, 3 / n)
        for u in range(n):
            for v in range(u + 1, n):
                if (u, v) not in weight and rng.random() < q:
                    weight[(u, v)] = rng.randint(1, 20)
        edges = sorted((u, v, w) for (u, v), w in weight.items())
        params = {"n": n, "edges": [list(e) for e in edges]}
        rendered = "\n".join(f"({u}, {v}, {w})" for u, v, w in edges)
        prompt = self._PROMPT.format(n=n, n_minus_1=n - 1, edges=rendered)
        _, tree = self._kruskal(n, edges)
        reference = " ".join(f"{u} {v}" for u, v in tree)
        return params, prompt, reference

    @staticmethod
    def _kruskal(n, edges):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        total = 0
        tree = []
        for u, v, w in sorted(edges, key=lambda e: e[2]):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                total += w
                tree.append((u, v))
                if len(tree) == n - 1:
                    break
        return total, tree

    def verify(self, instance, output):
        text = self.extract(instance, output)
        if text is None:
            return parse_failure()
        tokens = parse_int_list(text)
        if tokens is None:
            return parse_failure("not a list of integers")
        params = instance.params
        n = params["n"]
        weight = {}
        for u, v, w in (tuple(e) for e in params["edges"]):
            weight[(u, v)] = w
            weight[(v, u)] = w
        if len(tokens) % 2 != 0:
            return structural_violation(-0.5, "odd number of endpoints")
        pairs = [(tokens[i], tokens[i + 1]) for i in range(0, len(tokens), 2)]
        seen = set()
        for u, v in pairs:
            if (u, v) not in weight:
                return structural_violation(-0.5, f"({u}, {v}) is not an edge")
            key = (min(u, v), max(u, v))
            if key in seen:
                return structural_violation(-0.5, "duplicate edge")
            seen.add(key)
        if len(pairs) != n - 1 or not self._spans(n, pairs):
            return structural_violation(-0.5, "not a spanning tree")
        achieved = sum(weight[pair] for pair in pairs)
        optimal, _ = self._kruskal(n, [tuple(e) for e in params["edges"]])
        if achieved == optimal:
            return exact()
        return graded((optimal / achieved) ** 5, f"weight {achieved}, optimal {optimal}")

    @staticmethod
    def _spans(n, pairs):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        components = n
        for u, v in pairs:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                components -= 1
        return components == 1

    def corrupt_reference(self, instance, rng):
        tokens = [int(v) for v in instance.reference_answer.split()]
        pairs = [(tokens[i], tokens[i + 1]) for i in range(0, len(tokens), 2)]
        tree_keys = {(min(u, v), max(u, v)) for u, v in pairs}
        extras = [
            (u, v)
            for u, v, _ in (tuple(e) for e in instance.params["edges"])
            if (min(u, v), max(u, v)) not in tree_keys
        ]
        if extras:
            pairs[rng.randrange(len(pairs))] = rng.choice(extras)
        else:
            pairs[0] = pairs[-1]  # duplicate edge -> structural violation
        return " ".join(f"{u} {v}" for u, v in pairs)

    def params_schema(self):
        return {"n": "vertex count", "edges": "undirected weighted edges [u, v, w]"}

    def answer_grammar(self):
        return "one line: n-1 edges as endpoint pairs, all separated by spaces"


class TopologicalSortEnv(Environment):
    env_id = "topological_sort"
    display_name = "TopologicalSort"
    category = "classical-algorithm"
    max_supported_difficulty = 120
    reward_style = "binary"

    _PROMPT = """You are given a directed acyclic graph with {n} vertices labeled from 0 to {n_minus_1}.
Each edge is represented as a tuple (s, t), meaning an edge from s to t:
{edges}

Produce an ordering of all vertices such that every edge goes from an earlier vertex to a later one.

**Output Format:**
Your final answer should be a single line containing all {n} vertex labels, separated by spaces.
Example: 0 2 1
"""

    def generate(self, difficulty, rng):
        n = difficulty + 3
        order = list(range(n))
        rng.shuffle(order)
        total_pairs = n * (n - 1) // 2
        q = min(0.5, 3 / n)
        count = min(total_pairs, max(1, round(q * total_pairs)))
        # cumulative pair counts for decoding a flat pair index into (i, j)
        cumulative = [0]
        for i in range(n - 1):
            cumulative.append(cumulative[-1] + (n - 1 - i))
        edge_set = set()
        for index in rng.sample(range(total_pairs), count):
            i = bisect_right(cumulative, index) - 1
            j = i + 1 + (index - cumulative[i])
            edge_set.add((order[i], order[j]))
        edges = sorted(edge_set)
        params = {"n": n, "edges": [list(e) for e in edges]}
        rendered = "\n".join(f"({s}, {t})" for s, t in edges)
        prompt = self._PROMPT.format(n=n, n_minus_1=n - 1, edges=rendered)
        return params, prompt, " ".join(str(v) for v in order)

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
        position = {v: i for i, v in enumerate(values)}
        respected = all(
            position[s] < position[t] for s, t in instance.params["edges"]
        )
        if respected:
            return exact()
        return graded(0.0, "an edge points backward")

    def corrupt_reference(self, instance, rng):
        order = [int(v) for v in instance.reference_answer.split()]
        edges = instance.params["edges"]
        s, t = edges[rng.randrange(len(edges))]
        i, j = order.index(s), order.index(t)
        order[i], order[j] = order[j], order[i]
        return " ".join(str(v) for v in order)

    def params_schema(self):
        return {"n": "vertex count", "edges": "directed edges [s, t]"}

    def answer_grammar(self):
        return "one line: all n vertex labels separated by spaces"
