"""Exception types shared across the package."""


class KeynessError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(KeynessError):
    """Malformed parsed-document input; carries the offending line number."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class ManifestError(KeynessError):
    """Dataset manifest is missing, malformed, or references bad documents."""


class StatsFormatError(KeynessError):
    """Corpus statistics file has the wrong version or structure."""


class FeatureError(KeynessError):
    """A feature score could not be computed; carries the feature name."""

    def __init__(self, feature, message):
        self.feature = feature
        super().__init__(f"{feature}: {message}")


class ConvergenceError(KeynessError):
    """Iterative graph computation failed to converge; carries the residual."""

    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class ModelFormatError(KeynessError):
    """Model file rejected: bad magic, version, dimensions, or truncation."""


class TrainingError(KeynessError):
    """Training cannot proceed (no positives, non-finite loss, ...)."""
