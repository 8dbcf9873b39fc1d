"""Exception hierarchy shared across the package.

Every error carries a machine-readable ``code`` and an optional ``field``
naming the offending input, so callers (CLI, HTTP layer) can map failures
to structured envelopes without string matching.
"""

from __future__ import annotations


class DiariskError(Exception):
    """Base class for all library errors."""

    code = "error"

    def __init__(self, message: str, *, field: str | None = None):
        super().__init__(message)
        self.field = field


class MalformedDocument(DiariskError):
    """A model/dataset document could not be parsed or is structurally invalid."""

    code = "malformed_document"


class CoverMismatch(DiariskError):
    """An internal node's cover does not equal the sum of its children's covers."""

    code = "cover_mismatch"


class FeatureIndexOutOfRange(DiariskError):
    """A split references a feature index outside the schema."""

    code = "feature_index_out_of_range"


class SchemaMismatch(DiariskError):
    """Model and record (or knowledge base) disagree on the feature schema."""

    code = "schema_mismatch"


class DegenerateData(DiariskError):
    """Training data contains a single label class."""

    code = "degenerate_data"


class TooFewRows(DiariskError):
    """Training data has fewer rows than the trainer requires."""

    code = "too_few_rows"


class OutOfRange(DiariskError):
    """A probability outside [0, 1] was passed where one is required."""

    code = "out_of_range"


class TooManyFeatures(DiariskError):
    """The exhaustive Shapley oracle refuses schemas it cannot enumerate."""

    code = "too_many_features"


class UnknownFeature(DiariskError):
    """A value refers to a feature id absent from the schema."""

    code = "unknown_feature"


class MissingFeature(DiariskError):
    """A record lacks a value for a schema feature."""

    code = "missing_feature"


class OutOfBounds(DiariskError):
    """A feature value violates its [min, max] bounds or binary domain."""

    code = "out_of_bounds"


class UncontrollableFeature(DiariskError):
    """A what-if override targets a feature that cannot be changed by lifestyle."""

    code = "uncontrollable_feature"


class UncontrollableInDaily(DiariskError):
    """A daily log entry tries to set an uncontrollable feature."""

    code = "uncontrollable_in_daily"


class InvalidValue(DiariskError):
    """A stored value is invalid (bad bounds, bad user id, bad date)."""

    code = "invalid_value"


class IncompleteBaseline(DiariskError):
    """The user's logs do not yet cover every schema feature."""

    code = "incomplete_baseline"


class EmptyKnowledgeBase(DiariskError):
    """Narrative generation needs a knowledge base with at least one entry."""

    code = "empty_knowledge_base"


class NarrativeSchemaError(DiariskError):
    """A completion response violates the published card JSON schema.

    ``path`` points at the offending location, e.g. ``cards[2].sentences``.
    """

    code = "schema_error"

    def __init__(self, message: str, *, path: str = "$"):
        super().__init__(message)
        self.path = path


class CompletionError(DiariskError):
    """The remote completion endpoint failed (network, HTTP, or payload shape)."""

    code = "completion_error"
