"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: ValidationError -> 2,
UnsupportedError -> 3, InconsistencyError -> 4.
"""


class BBQuiverError(Exception):
    """Base class for all library errors."""


class ValidationError(BBQuiverError):
    """Malformed input: unknown vertices, rank mismatches, bad files."""


class UnsupportedError(BBQuiverError):
    """Well-formed input outside the supported regime (non-coprime,
    oriented cycles, exceeded budgets, unknowable components)."""


class BudgetExceededError(UnsupportedError):
    """A brute-force computation would exceed the configured budget."""


class PartialResultError(UnsupportedError):
    """An aggregate needed every part but some were unknown."""

    def __init__(self, message, offenders=()):
        super().__init__(message)
        self.offenders = list(offenders)


class InconsistencyError(BBQuiverError):
    """An internal invariant failed; indicates invalid upstream data or a bug."""
