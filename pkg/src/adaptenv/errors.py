"""Exception types shared across the package."""


class AdaptEnvError(Exception):
    """Base class for all package-specific errors."""


class UnknownEnvironment(AdaptEnvError):
    """Raised when an env_id is not present in the registry."""

    def __init__(self, env_id):
        super().__init__(f"unknown environment: {env_id!r}")
        self.env_id = env_id


class DifficultyOutOfRange(AdaptEnvError):
    """Raised when a requested difficulty is negative or above the
    environment's supported maximum."""

    def __init__(self, env_id, difficulty, max_difficulty):
        super().__init__(
            f"difficulty {difficulty} out of range for {env_id!r} "
            f"(supported: 0..{max_difficulty})"
        )
        self.env_id = env_id
        self.difficulty = difficulty
        self.max_difficulty = max_difficulty


class GenerationExhausted(AdaptEnvError):
    """Raised when bounded generation retries fail to produce a usable
    instance (e.g. no safe probe points, or deduplication runs dry)."""


class DifficultyAboveWindow(AdaptEnvError):
    """Raised when outcomes are reported for a difficulty above the
    scheduler's current frontier for that environment."""

    def __init__(self, env_id, difficulty, high):
        super().__init__(
            f"difficulty {difficulty} is above the frontier {high} for {env_id!r}"
        )
        self.env_id = env_id
        self.difficulty = difficulty
        self.high = high


class AttemptCapExceeded(AdaptEnvError):
    """Raised when dynamic sampling hits its attempt cap before filling the
    training batch.  Carries the partial batch so callers can continue."""

    def __init__(self, groups, metrics):
        super().__init__(
            f"attempt cap hit with {len(groups)} kept groups "
            f"out of {metrics.sampled_prompts} sampled prompts"
        )
        self.groups = groups
        self.metrics = metrics


class CheckpointError(AdaptEnvError):
    """Raised when checkpoint bytes are malformed or incompatible."""


class ProtocolError(AdaptEnvError):
    """Raised by protocol endpoints on malformed requests."""

    def __init__(self, code, message):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message

class DuplicateEnvironmentId(AdaptEnvError):
    """Raised when registering an env_id that already exists."""

    def __init__(self, env_id):
        super().__init__(f"environment already registered: {env_id!r}")
        self.env_id = env_id


class EmptyEnvironmentSet(AdaptEnvError):
    """Raised when a scheduler is initialized with no environments."""


class MissingReference(AdaptEnvError):
    """Raised when a synthetic policy is asked to respond to an instance
    that carries no reference answer."""


class MalformedCheckpoint(CheckpointError):
    """Checkpoint bytes are not a valid checkpoint record."""


class UnsupportedVersion(CheckpointError):
    """Checkpoint version is not supported by this build."""

    def __init__(self, version):
        super().__init__(f"unsupported checkpoint version: {version}")
        self.version = version


class DeduplicationExhausted(AdaptEnvError):
    """Raised when export retries cannot find enough unique prompts."""
