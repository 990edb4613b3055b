"""Exception hierarchy shared across the package.

Every error raised by otosum derives from :class:`OtosumError`, so callers
can catch one base type at CLI/service boundaries.  Validation-style errors
(bad inputs, bad config) are distinct from runtime failures (non-finite
loss, unreadable checkpoint); the CLI maps the former to exit code 1 and
the latter to exit code 2.
"""


class OtosumError(Exception):
    """Base class for all package errors."""


# --- input validation ---------------------------------------------------


class ParseError(OtosumError):
    """A file could not be parsed against its expected schema."""


class ValidationError(OtosumError):
    """Parsed data violates an invariant (duplicate id, bad label, ...)."""


class ConfigError(ValidationError):
    """A run configuration is malformed; message names the field."""


class TooFewRecords(ValidationError):
    """A class cannot populate the requested splits or folds."""


class LengthMismatch(ValidationError):
    """Paired sequences have different lengths."""


class MissingReference(ValidationError):
    """Hypothesis ids with no matching reference; message lists them."""


class UnknownPlaceholder(ValidationError):
    """Prompt template does not contain the required ``{class}`` slot."""


class DecodeError(OtosumError):
    """Bytes do not decode as a supported raster image."""


# --- sampling -------------------------------------------------------------


class NoPositiveAvailable(OtosumError):
    """Anchor's class has no other member to serve as the positive."""


class NoNegativeAvailable(OtosumError):
    """No record outside the anchor's class to serve as the negative."""


# --- numerics / model ------------------------------------------------------


class ShapeError(OtosumError):
    """Tensor or layer shapes do not compose."""


class OddDimension(ShapeError):
    """Sinusoidal position table requires an even model dimension."""


class DoubleEncoding(OtosumError):
    """Positional encoding applied twice to the same sequence."""


class NonFiniteLoss(OtosumError):
    """Loss became NaN/inf; message carries epoch/batch diagnostics."""


class CheckpointError(OtosumError):
    """Checkpoint directory is missing, corrupt, or inconsistent."""


class EmptyVocabulary(OtosumError):
    """No tokens available to build the generator vocabulary."""


# --- metrics ----------------------------------------------------------------


class EmptyTrainSet(OtosumError):
    """KNN queried against an empty training set."""


class EmptyCorpus(OtosumError):
    """Corpus-level metric called with no pairs."""


class EmptyRatings(OtosumError):
    """Human-rating aggregation called with no ratings."""


class DegenerateProportion(OtosumError):
    """Pooled proportion is 0 or 1; the z statistic is undefined."""
