"""Exception types shared across the package."""


class CapacityError(ValueError):
    """A requested code length exceeds the supported range."""


class EvaluationError(RuntimeError):
    """A candidate priority function could not be evaluated.

    ``kind`` is one of ``"non_executable"``, ``"invalid_priority"``,
    ``"timeout"``.
    """

    def __init__(self, message, kind="non_executable"):
        super().__init__(message)
        self.kind = kind


class StateError(RuntimeError):
    """An operation was issued against a database in the wrong state."""


class SnapshotError(RuntimeError):
    """A snapshot file could not be loaded (corrupt or wrong version)."""
