"""Procedurally generated, algorithmically verified reasoning environments
with an adaptive difficulty scheduler, a synthetic-policy simulation harness,
and a line protocol for external training loops."""

from .errors import (
    AdaptEnvError,
    AttemptCapExceeded,
    CheckpointError,
    DeduplicationExhausted,
    DifficultyAboveWindow,
    DifficultyOutOfRange,
    DuplicateEnvironmentId,
    EmptyEnvironmentSet,
    GenerationExhausted,
    MalformedCheckpoint,
    MissingReference,
    ProtocolError,
    UnknownEnvironment,
    UnsupportedVersion,
)
from .extraction import extract_answer
from .harness import (
    DEFAULT_SIMULATION_ENVS,
    RolloutGroup,
    SimulationConfig,
    StepMetrics,
    SyntheticPolicy,
    collect_training_batch,
    compute_effective_prompt_ratio,
    run_simulation,
    synthetic_learn,
    synthetic_respond,
)
from .protocol import (
    ProtocolServer,
    export_testset,
    read_checkpoint,
    restore_checkpoint,
    save_checkpoint,
    serve_stdio,
    serve_tcp,
    write_checkpoint,
)
from .registry import ALL_ENVIRONMENTS, EnvironmentRegistry, default_registry
from .rng import Coordinates, SeedSequencer, derive_rng, derive_seed
from .scheduler import (
    DifficultyWindow,
    SchedulerConfig,
    SchedulerState,
    check_thresholds,
    init_state,
    is_correct,
    record_outcomes,
    sample_task,
    static_sample,
)
from .types import (
    EnvironmentDescriptor,
    ProblemInstance,
    SeedPath,
    VerificationVerdict,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_ENVIRONMENTS",
    "AdaptEnvError",
    "AttemptCapExceeded",
    "CheckpointError",
    "Coordinates",
    "DEFAULT_SIMULATION_ENVS",
    "DeduplicationExhausted",
    "DifficultyAboveWindow",
    "DifficultyOutOfRange",
    "DifficultyWindow",
    "DuplicateEnvironmentId",
    "EmptyEnvironmentSet",
    "EnvironmentDescriptor",
    "EnvironmentRegistry",
    "GenerationExhausted",
    "MalformedCheckpoint",
    "MissingReference",
    "ProblemInstance",
    "ProtocolError",
    "ProtocolServer",
    "RolloutGroup",
    "SchedulerConfig",
    "SchedulerState",
    "SeedPath",
    "SeedSequencer",
    "SimulationConfig",
    "StepMetrics",
    "SyntheticPolicy",
    "UnknownEnvironment",
    "UnsupportedVersion",
    "VerificationVerdict",
    "check_thresholds",
    "collect_training_batch",
    "compute_effective_prompt_ratio",
    "default_registry",
    "derive_rng",
    "derive_seed",
    "export_testset",
    "extract_answer",
    "init_state",
    "is_correct",
    "read_checkpoint",
    "record_outcomes",
    "restore_checkpoint",
    "run_simulation",
    "sample_task",
    "save_checkpoint",
    "serve_stdio",
    "serve_tcp",
    "static_sample",
    "synthetic_learn",
    "synthetic_respond",
    "write_checkpoint",
]
