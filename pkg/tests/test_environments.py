import math
import random

import pytest

from adaptenv.environments.sorting import length_for_difficulty
from adaptenv.errors import DifficultyOutOfRange, UnknownEnvironment
from adaptenv.registry import default_registry
from adaptenv.rng import Coordinates, SeedSequencer

REGISTRY = default_registry()
ENV_IDS = REGISTRY.env_ids()

GIBBERISH = [
    "",
    "   ",
    "no idea, sorry!",
    "<answer></answer>",
    "NaN",
    "```\n```",
]


def make(env_id, difficulty, counter=0, master_seed=99):
    return REGISTRY.generate(env_id, difficulty,
                             Coordinates(master_seed, env_id, counter))


def sample_difficulties(env_id):
    cap = REGISTRY.get(env_id).max_supported_difficulty
    return sorted({0, 1, min(2, cap), cap // 2, cap})


@pytest.mark.parametrize("env_id", ENV_IDS)
def test_descriptor_consistent(env_id):
    descriptor = REGISTRY.get(env_id).descriptor()
    assert descriptor.env_id == env_id
    assert descriptor.max_supported_difficulty >= 4
    assert descriptor.reward_style in ("binary", "graded")


def test_sixteen_environments():
    assert len(ENV_IDS) == 16


@pytest.mark.parametrize("env_id", ENV_IDS)
def test_generation_is_deterministic(env_id):
    a = make(env_id, 1, counter=5)
    b = make(env_id, 1, counter=5)
    assert a == b


@pytest.mark.parametrize("env_id", ENV_IDS)
def test_reference_scores_exact(env_id):
    for difficulty in sample_difficulties(env_id):
        for counter in range(3):
            instance = make(env_id, difficulty, counter)
            assert instance.reference_answer is not None
            verdict = REGISTRY.verify(instance, instance.reference_answer)
            assert verdict.category == "Exact", (env_id, difficulty, counter)
            assert verdict.reward == 1.0


@pytest.mark.parametrize("env_id", ENV_IDS)
def test_reference_survives_wrapping(env_id):
    instance = make(env_id, 2, counter=1)
    wrapped = f"Let me think.\n</think>\nHere you go:\n{instance.reference_answer}\n"
    assert REGISTRY.verify(instance, wrapped).reward == 1.0
    tagged = f"blah blah <answer>{instance.reference_answer}</answer> trailing"
    assert REGISTRY.verify(instance, tagged).reward == 1.0


@pytest.mark.parametrize("env_id", ENV_IDS)
def test_corruption_never_scores_full(env_id):
    rng = random.Random(4)
    for difficulty in sample_difficulties(env_id)[:3]:
        for counter in range(4):
            instance = make(env_id, difficulty, counter)
            corrupted = REGISTRY.corrupt_reference(instance, rng)
            verdict = REGISTRY.verify(instance, corrupted)
            assert verdict.reward < 1.0 - 1e-9, (env_id, difficulty, counter)


@pytest.mark.parametrize("env_id", ENV_IDS)
def test_gibberish_is_parse_failure_or_worse(env_id):
    instance = make(env_id, 1)
    for output in GIBBERISH:
        verdict = REGISTRY.verify(instance, output)
        assert -1.0 <= verdict.reward <= 1.0
        assert verdict.reward <= 0.0


@pytest.mark.parametrize("env_id", ENV_IDS)
def test_difficulty_range_enforced(env_id):
    cap = REGISTRY.get(env_id).max_supported_difficulty
    with pytest.raises(DifficultyOutOfRange):
        make(env_id, cap + 1)
    with pytest.raises(DifficultyOutOfRange):
        make(env_id, -1)


def test_unknown_environment():
    with pytest.raises(UnknownEnvironment):
        REGISTRY.get("nope")


def test_manifests_have_schemas():
    manifests = REGISTRY.manifests()
    assert len(manifests) == 16
    for manifest in manifests:
        assert manifest["params_schema"]
        assert manifest["answer_grammar"]


# --- per-environment behavior ------------------------------------------------


def test_sorting_length_formula():
    assert length_for_difficulty(0) == 3
    assert length_for_difficulty(1) == 3  # 3.3 rounds down
    assert length_for_difficulty(8) == 6  # 6.43
    assert length_for_difficulty(60) == 913
    values = [length_for_difficulty(d) for d in range(61)]
    assert values == sorted(values)
    assert min(values) >= 2


def test_sorting_rewards():
    instance = make("sorting", 4)
    expected = sorted(instance.params["array"])
    n = instance.params["n"]
    assert REGISTRY.verify(instance, "1 2").reward == -0.5  # wrong length
    assert REGISTRY.verify(instance, "a b c").reward == -1.0
    shuffled = list(expected)
    shuffled[0], shuffled[-1] = shuffled[-1], shuffled[0]
    verdict = REGISTRY.verify(instance, " ".join(map(str, shuffled)))
    matches = sum(1 for a, b in zip(shuffled, expected) if a == b)
    assert verdict.reward == pytest.approx((matches / n) ** 10, abs=1e-12)


def test_multiplication_operands_and_reward():
    for d in (0, 3, 10):
        instance = make("multiplication", d)
        a, b = instance.params["a"], instance.params["b"]
        assert len(str(a)) == d + 1 and len(str(b)) == d + 1
    instance = make("multiplication", 2)
    truth = instance.params["a"] * instance.params["b"]
    verdict = REGISTRY.verify(instance, str(truth + 1))
    assert verdict.reward == pytest.approx((min(truth, truth + 1) / max(truth, truth + 1)) ** 10)
    assert REGISTRY.verify(instance, "-5").reward == -1.0
    assert REGISTRY.verify(instance, "0").reward == 0.0


def test_crt_instance_consistency():
    for d in (0, 12, 60):
        instance = make("crt", d)
        x = int(instance.reference_answer)
        for m, r in zip(instance.params["moduli"], instance.params["residues"]):
            assert x % m == r
        assert REGISTRY.verify(instance, "-3").reward == -1.0
        assert REGISTRY.verify(instance, str(x + 1)).reward == 0.0


def test_josephus_brute_force():
    for counter in range(10):
        instance = make("josephus", 5, counter)
        n, k = instance.params["n"], instance.params["k"]
        people = list(range(1, n + 1))
        index = 0
        while len(people) > 1:
            index = (index + k - 1) % len(people)
            people.pop(index)
        assert instance.reference_answer == str(people[0])


def test_inversion_pair_brute_force():
    for counter in range(10):
        instance = make("inversion_pair", 6, counter)
        array = instance.params["array"]
        count = sum(
            1
            for i in range(len(array))
            for j in range(i + 1, len(array))
            if array[i] > array[j]
        )
        assert instance.reference_answer == str(count)


def test_subset_sum_verdicts():
    instance = make("subset_sum", 3)
    values = instance.params["values"]
    target = instance.params["target"]
    assert REGISTRY.verify(instance, "0 0").reward == -0.5  # duplicate index
    assert REGISTRY.verify(instance, "99").reward == -0.5  # out of range
    wrong = "0" if values[0] != target else "1"
    expected = 1.0 if sum(values[int(i)] for i in wrong.split()) == target else 0.0
    assert REGISTRY.verify(instance, wrong).reward == expected


def test_sat_partial_credit():
    instance = make("sat", 5)
    n, m = instance.params["n"], instance.params["m"]
    assert REGISTRY.verify(instance, "1 0").reward == -0.5  # wrong arity
    assert REGISTRY.verify(instance, " ".join(["2"] * n)).reward == -0.5
    flipped = [int(v) for v in instance.reference_answer.split()]
    flipped = [1 - v for v in flipped]
    satisfied = sum(
        1
        for clause in instance.params["clauses"]
        if any(flipped[abs(l) - 1] == (1 if l > 0 else 0) for l in clause)
    )
    verdict = REGISTRY.verify(instance, " ".join(map(str, flipped)))
    if satisfied == m:
        assert verdict.reward == 1.0
    else:
        assert verdict.reward == pytest.approx((satisfied / m) ** 5, abs=1e-12)


def test_knapsack_verdicts():
    instance = make("knapsack", 4)
    params = instance.params
    everything = " ".join(str(i) for i in range(params["n"]))
    assert REGISTRY.verify(instance, everything).reward == -0.5  # overweight
    assert REGISTRY.verify(instance, "0 0").reward == -0.5
    verdict = REGISTRY.verify(instance, "")
    assert verdict.reward == -1.0
    # the empty subset is a valid answer worth 0^5 = 0... but "" is a parse
    # failure; a single cheap item is gradeable
    lightest = min(range(params["n"]), key=lambda i: params["weights"][i])
    verdict = REGISTRY.verify(instance, str(lightest))
    assert 0.0 <= verdict.reward <= 1.0


def test_shortest_path_verdicts():
    instance = make("shortest_path", 5)
    n = instance.params["n"]
    assert REGISTRY.verify(instance, "0").reward == -0.5  # too short
    assert REGISTRY.verify(instance, f"0 {n}").reward == -0.5  # bad vertex
    assert REGISTRY.verify(instance, f"{n - 1} 0").reward == -0.5
    reference = instance.reference_answer
    assert REGISTRY.verify(instance, reference).reward == 1.0


def test_mst_verdicts():
    instance = make("minimum_spanning_tree", 5)
    assert REGISTRY.verify(instance, "0 1 2").reward == -0.5  # odd tokens
    tokens = instance.reference_answer.split()
    duplicated = " ".join(tokens[:2] + tokens[:2] + tokens[4:])
    assert REGISTRY.verify(instance, duplicated).reward == -0.5


def test_topological_sort_verdicts():
    instance = make("topological_sort", 6)
    n = instance.params["n"]
    assert REGISTRY.verify(instance, "0 0 1").reward == -0.5
    order = [int(v) for v in instance.reference_answer.split()]
    s, t = instance.params["edges"][0]
    i, j = order.index(s), order.index(t)
    order[i], order[j] = order[j], order[i]
    assert REGISTRY.verify(instance, " ".join(map(str, order))).reward == 0.0
    reversed_order = " ".join(str(v) for v in range(n - 1, -1, -1))
    verdict = REGISTRY.verify(instance, reversed_order)
    assert verdict.reward in (0.0, 1.0)


def test_hamiltonian_partial_credit():
    instance = make("hamiltonian_path_existence", 7)
    n = instance.params["n"]
    assert REGISTRY.verify(instance, "0 0 1").reward == -0.5
    path = [int(v) for v in instance.reference_answer.split()]
    path[0], path[-1] = path[-1], path[0]
    verdict = REGISTRY.verify(instance, " ".join(map(str, path)))
    edge_set = {tuple(e) for e in instance.params["edges"]}
    hits = sum(1 for a, b in zip(path, path[1:]) if (a, b) in edge_set)
    if hits == n - 1:
        assert verdict.reward == 1.0
    else:
        assert verdict.reward == pytest.approx((hits / (n - 1)) ** 5, abs=1e-12)


def test_sudoku_verdicts():
    instance = make("sudoku", 2)
    n, m = instance.params["n"], instance.params["m"]
    size = n * m
    assert REGISTRY.verify(instance, "1 2 3").reward == -1.0  # wrong cell count
    rows = [row.split() for row in instance.reference_answer.splitlines()]
    # break one masked cell
    puzzle = instance.params["puzzle"]
    masked = [(r, c) for r in range(size) for c in range(size) if puzzle[r][c] == 0]
    if masked:
        r, c = masked[0]
        rows[r][c] = str(int(rows[r][c]) % size + 1)
        broken = "\n".join(" ".join(row) for row in rows)
        assert REGISTRY.verify(instance, broken).reward == 0.0
    too_big = "\n".join(" ".join(str(size + 1) for _ in range(size)) for _ in range(size))
    assert REGISTRY.verify(instance, too_big).reward == 0.0


def test_sudoku_multiline_extraction():
    instance = make("sudoku", 1)
    wrapped = f"Let me solve this step by step...\n{instance.reference_answer}\n"
    assert REGISTRY.verify(instance, wrapped).reward == 1.0


def test_integral_constant_shift_is_exact():
    instance = make("integral", 3)
    assert REGISTRY.verify(instance, f"{instance.reference_answer} + 5").reward == 1.0
    assert REGISTRY.verify(instance, f"({instance.reference_answer}) - 17").reward == 1.0
    assert REGISTRY.verify(instance, f"{instance.reference_answer} + x").reward == 0.0
    assert REGISTRY.verify(instance, "this is not math").reward == -1.0


def test_polynomial_reward_shape():
    instance = make("polynomial_minimum", 1)
    best = float(instance.reference_answer)
    assert REGISTRY.verify(instance, str(best)).reward == 1.0
    assert REGISTRY.verify(instance, "0.0").reward == pytest.approx(0.0, abs=1e-12)
    assert REGISTRY.verify(instance, "1e300").reward == -1.0
    assert REGISTRY.verify(instance, "inf").reward == -1.0
    assert REGISTRY.verify(instance, "zebra").reward == -1.0


def test_instance_reproducible_from_seed_path():
    """An instance is recoverable from (env_id, difficulty, seed_path)."""
    cursor = SeedSequencer(31)
    for env_id in ENV_IDS:
        original = REGISTRY.generate(env_id, 2, cursor.next(env_id))
        replay = REGISTRY.generate(
            env_id,
            original.difficulty,
            Coordinates(
                original.seed_path.master_seed,
                "ignored",  # only the seed path matters
                original.seed_path.counter,
            ),
        )
        assert replay == original
