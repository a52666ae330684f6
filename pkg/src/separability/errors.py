"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes, so keep the split stable:
ingestion problems (bad files), validation problems (bad class
structure / arguments), numeric problems (singular covariance etc.).
"""


class SeparabilityError(Exception):
    """Base class for all errors raised by this package."""


class IngestionError(SeparabilityError):
    """A file could not be read or parsed into a dataset."""


class ValidationError(SeparabilityError):
    """Inputs are structurally invalid (class counts, sizes, flags)."""


class NumericError(SeparabilityError):
    """A numeric prerequisite failed (e.g. singular covariance)."""
