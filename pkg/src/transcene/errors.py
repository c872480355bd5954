"""Exception types with stable error codes, shared by the library, CLI and service."""


class EngineError(Exception):
    """Base class; `code` is the machine-readable identifier used on the wire."""

    code = "engine_error"


class ObjectNotFoundError(EngineError):
    code = "object_not_found"


class NoOpChangeError(EngineError):
    code = "no_op"


class OutOfPlaneError(EngineError):
    code = "out_of_plane"


class OverlapViolationError(EngineError):
    code = "overlap_violation"


class MismatchedIdsError(EngineError):
    code = "mismatched_ids"


class SequenceTooLongError(EngineError):
    code = "sequence_too_long"


class UnsolvableError(EngineError):
    code = "unsolvable"


class PlacementFailureError(EngineError):
    code = "placement_failure"


class SamplingFailureError(EngineError):
    code = "sampling_failure"


class DatasetError(EngineError):
    code = "dataset_error"


class MalformedRecordError(DatasetError):
    code = "malformed_record"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class VersionMismatchError(DatasetError):
    code = "version_mismatch"


class ChecksumMismatchError(DatasetError):
    code = "checksum_mismatch"


class UnknownSampleError(EngineError):
    code = "unknown_sample"


class UnknownSessionError(EngineError):
    code = "unknown_session"


class SessionCompleteError(EngineError):
    code = "session_complete"


class MalformedAnswerError(EngineError):
    code = "malformed_answer"
