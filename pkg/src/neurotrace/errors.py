"""Exception taxonomy shared across the package.

Every user-facing failure maps to one of these; the server translates them
to HTTP error codes and the CLI to exit codes.
"""


class NeurotraceError(Exception):
    """Base class for all package errors."""


class ConfigError(NeurotraceError):
    """Invalid network or session configuration."""

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = list(violations) if violations else [message]


class ShapeError(NeurotraceError):
    """Dimension mismatch between arrays, configs, or inputs."""


class InputError(NeurotraceError):
    """Prediction input is malformed (non-finite values)."""


class UnsupportedMetricError(NeurotraceError):
    """Metric requested for a task kind that does not define it."""


class DataError(NeurotraceError):
    """Dataset-level failure (empty split, missing dataset)."""


class IngestionError(DataError):
    """CSV ingestion failure; carries a row/column locator when known."""

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class ParseError(NeurotraceError):
    """Trace line could not be parsed; carries the 1-based line number."""

    def __init__(self, message, line_number=None):
        super().__init__(message)
        self.line_number = line_number


class StateError(NeurotraceError):
    """Illegal session state transition; carries the current status."""

    def __init__(self, message, status=None):
        super().__init__(message)
        self.status = status
