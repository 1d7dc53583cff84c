"""Exception taxonomy shared across the toolkit.

Each class carries the process exit code the CLI maps it to, so batch scripts
can distinguish malformed input data from bad parameters, unrecognized file
layouts, and containers that fail their own consistency checks.
"""


class CsvibError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class DataParseError(CsvibError):
    """A text or audio payload could not be parsed (bad CSV line, etc.)."""

    exit_code = 3


class ParameterError(CsvibError):
    """An argument is out of its valid range or combination."""

    exit_code = 4


class DimensionError(ParameterError):
    """Vector/matrix lengths do not line up."""


class UndefinedMetricError(ParameterError):
    """The requested metric has no defined value for this input."""


class SymmetryError(ParameterError):
    """DFT coefficients are not conjugate-symmetric: the vector is corrupted."""


class FormatError(CsvibError):
    """A file is not in the expected binary/WAV layout."""

    exit_code = 5


class IntegrityError(CsvibError):
    """A container parsed but failed self-consistency checks."""

    exit_code = 6


class ResourceError(CsvibError):
    """A dense materialization would exceed the configured entry cap."""

    exit_code = 7


class RankDeficiencySignal(CsvibError):
    """Selected least-squares columns are numerically rank deficient."""
