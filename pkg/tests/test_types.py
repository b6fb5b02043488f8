import pytest

from adaptenv.types import (
    EnvironmentDescriptor,
    ProblemInstance,
    SeedPath,
    VerificationVerdict,
    exact,
    graded,
    parse_failure,
    structural_violation,
)


def test_category_reward_coupling():
    assert parse_failure().reward == -1.0
    assert exact().reward == 1.0
    assert structural_violation(-0.5, "x").reward == -0.5
    assert structural_violation(0.0, "x").reward == 0.0
    assert graded(0.25).category == "Graded"


@pytest.mark.parametrize(
    "reward,category",
    [
        (-0.9, "ParseFailure"),
        (0.5, "Exact"),
        (-0.3, "StructuralViolation"),
        (1.5, "Graded"),
        (-1.5, "Graded"),
    ],
)
def test_invalid_verdicts_rejected(reward, category):
    with pytest.raises(ValueError):
        VerificationVerdict(reward, category)


def test_unknown_category_rejected():
    with pytest.raises(ValueError):
        VerificationVerdict(0.0, "Partial")


def test_instance_record_round_trip():
    instance = ProblemInstance(
        env_id="sorting",
        difficulty=2,
        params={"n": 3, "array": [3, 1, 2]},
        prompt="sort these",
        reference_answer="1 2 3",
        seed_path=SeedPath(7, 42),
    )
    record = instance.to_record()
    assert list(record) == [
        "env_id", "difficulty", "params", "prompt", "reference_answer", "seed_path",
    ]
    assert ProblemInstance.from_record(record) == instance


def test_instance_record_omits_missing_reference():
    instance = ProblemInstance("sorting", 0, {}, "p", None, SeedPath(0, 0))
    record = instance.to_record()
    assert "reference_answer" not in record
    assert ProblemInstance.from_record(record).reference_answer is None


def test_descriptor_validation():
    with pytest.raises(ValueError):
        EnvironmentDescriptor("e", "E", "bad-category", 5, True, "binary")
    with pytest.raises(ValueError):
        EnvironmentDescriptor("e", "E", "logic-puzzle", 5, True, "smooth")
    with pytest.raises(ValueError):
        EnvironmentDescriptor("e", "E", "logic-puzzle", -1, True, "binary")
