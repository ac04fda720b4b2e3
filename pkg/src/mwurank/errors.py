"""Exception hierarchy shared across the pipeline.

Exit-code mapping used by the CLI: UsageError -> 1, DataFormatError -> 2,
InconsistentTableError -> 3.
"""


class MwuRankError(Exception):
    """Base class for all package errors."""


class UsageError(MwuRankError):
    """Caller asked for something the toolkit does not support
    (e.g. a measure/gram-size pair outside the applicability matrix)."""


class DataFormatError(MwuRankError):
    """Malformed input data: undecodable bytes, bad count/score file lines."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InconsistentTableError(MwuRankError):
    """A count or contingency table violates its own invariants
    (e.g. a negative reconstructed cell). Indicates a counting bug,
    not a user error."""


class MeasureDomainError(MwuRankError):
    """A measure's precondition failed for a specific n-gram
    (zero denominator, zero marginal, ...)."""
