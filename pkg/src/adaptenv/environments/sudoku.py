"""Generalized (n x m) Sudoku completion.

Generation never solves anything: a canonical solved grid is scrambled by
validity-preserving transformations (band/stack permutations, row/column
permutations inside them, symbol relabeling, transpose when square), then
cells are masked.  Subgrids are n rows tall and m columns wide; the full
grid is (n*m) x (n*m).
"""

from .base import Environment
from ..types import exact, parse_failure, structural_violation

_PROMPT = """Solve the following Sudoku puzzle of size ({N} x {M}) x ({M} x {N}) = {NM} x {NM}.
Each number is in the range from 1 to {NM}, and empty cells are represented by 0.
Here is the input grid:
{sudoku}

Rules of Sudoku:
1. Each **row** must contain all digits from 1 to {NM}, without repetition.
2. Each **column** must contain all digits from 1 to {NM}, without repetition.
3. The grid is divided into {M} x {N} **subgrids**, each of size {N} x {M}.
   Each subgrid must also contain all digits from 1 to {NM}, without repetition.

**Output Format:**
Your final answer should contain {NM} lines, each with {NM} numbers separated by spaces.
The numbers should represent the completed Sudoku grid in **row-major order**, matching the format of the given input (i.e., the first number on the first line corresponds to the top-left cell of the grid).
"""


def canonical_grid(n: int, m: int):
    size = n * m
    return [
        [((r % n) * m + r // n + c) % size + 1 for c in range(size)]
        for r in range(size)
    ]


def grid_is_valid(grid, n: int, m: int) -> bool:
    """All three Sudoku rules on a fully filled grid."""
    size = n * m
    want = set(range(1, size + 1))
    for row in grid:
        if set(row) != want:
            return False
    for c in range(size):
        if {grid[r][c] for r in range(size)} != want:
            return False
    for band in range(m):
        for stack in range(n):
            block = {
                grid[band * n + r][stack * m + c]
                for r in range(n)
                for c in range(m)
            }
            if block != want:
                return False
    return True


def _scramble(grid, n: int, m: int, rng):
    size = n * m
    # permute bands (groups of n rows), then rows within each band
    bands = list(range(m))
    rng.shuffle(bands)
    rows = []
    for band in bands:
        order = list(range(n))
        rng.shuffle(order)
        rows.extend(band * n + r for r in order)
    grid = [grid[r] for r in rows]
    # permute stacks (groups of m columns), then columns within each stack
    stacks = list(range(n))
    rng.shuffle(stacks)
    cols = []
    for stack in stacks:
        order = list(range(m))
        rng.shuffle(order)
        cols.extend(stack * m + c for c in order)
    grid = [[row[c] for c in cols] for row in grid]
    # relabel symbols
    relabel = list(range(1, size + 1))
    rng.shuffle(relabel)
    grid = [[relabel[v - 1] for v in row] for row in grid]
    if n == m and rng.random() < 0.5:
        grid = [list(row) for row in zip(*grid)]
    return grid


class SudokuEnv(Environment):
    env_id = "sudoku"
    display_name = "Sudoku"
    category = "logic-puzzle"
    max_supported_difficulty = 4
    reward_style = "binary"

    def generate(self, difficulty, rng):
        cap = difficulty + 2
        shapes = [
            (n, m)
            for n in range(1, cap + 1)
            for m in range(1, cap + 1)
            if 2 <= max(n, m) <= cap and n * m >= 4
        ]
        n, m = rng.choice(shapes)
        solution = _scramble(canonical_grid(n, m), n, m, rng)
        mask_prob = min(0.75, 0.25 + 0.05 * difficulty)
        puzzle = [
            [0 if rng.random() < mask_prob else v for v in row]
            for row in solution
        ]
        params = {"n": n, "m": m, "puzzle": puzzle}
        rendered = "\n".join(" ".join(str(v) for v in row) for row in puzzle)
        prompt = _PROMPT.format(N=n, M=m, NM=n * m, sudoku=rendered)
        reference = "\n".join(" ".join(str(v) for v in row) for row in solution)
        return params, prompt, reference

    def answer_line_count(self, instance):
        return instance.params["n"] * instance.params["m"]

    def verify(self, instance, output):
        n, m = instance.params["n"], instance.params["m"]
        size = n * m
        text = self.extract(instance, output)
        if text is None:
            return parse_failure()
        tokens = text.split()
        if len(tokens) != size * size:
            return parse_failure(f"expected {size * size} numbers, got {len(tokens)}")
        try:
            values = [int(token) for token in tokens]
        except ValueError:
            return parse_failure("not an integer grid")
        grid = [values[r * size:(r + 1) * size] for r in range(size)]
        if any(not 1 <= v <= size for v in values):
            return structural_violation(0.0, f"values outside 1..{size}")
        puzzle = instance.params["puzzle"]
        for r in range(size):
            for c in range(size):
                if puzzle[r][c] and grid[r][c] != puzzle[r][c]:
                    return structural_violation(0.0, "contradicts a given cell")
        if not grid_is_valid(grid, n, m):
            return structural_violation(0.0, "violates a Sudoku rule")
        return exact()

    def corrupt_reference(self, instance, rng):
        puzzle = instance.params["puzzle"]
        size = instance.params["n"] * instance.params["m"]
        solution = [
            [int(v) for v in line.split()]
            for line in instance.reference_answer.splitlines()
        ]
        masked = [(r, c) for r in range(size) for c in range(size) if puzzle[r][c] == 0]
        r, c = rng.choice(masked) if masked else (0, 0)
        solution[r][c] = solution[r][c] % size + 1
        return "\n".join(" ".join(str(v) for v in row) for row in solution)

    def params_schema(self):
        return {
            "n": "subgrid height",
            "m": "subgrid width",
            "puzzle": "(n*m)^2 grid with 0 for masked cells",
        }

    def answer_grammar(self):
        return "n*m lines, each with n*m integers separated by spaces"
