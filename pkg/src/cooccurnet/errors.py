"""Exception hierarchy shared across the toolkit."""


class CooccurnetError(Exception):
    """Base class for all toolkit errors."""


class IngestError(CooccurnetError):
    """A document or input file could not be ingested."""


class InvalidTermError(CooccurnetError):
    """A search term is empty or malformed."""


class DegeneratePairError(CooccurnetError):
    """Two-term operation invoked with identical terms or actors."""


class EmptySpaceError(CooccurnetError):
    """An operation needs a nonempty document/transaction set as denominator."""


class MeasureDomainError(CooccurnetError):
    """Count arguments violate the similarity-measure domain invariants."""


class ConfigError(CooccurnetError):
    """Invalid run configuration (thresholds, duplicate ids, measure choice)."""


class SourceError(CooccurnetError):
    """Base class for hit-count source failures."""


class MissingFixtureError(SourceError):
    """A fixture source was asked for a query it has no entry for."""


class RateLimitError(SourceError):
    """The remote endpoint rejected a request for quota reasons (HTTP 429)."""


class RetryableSourceError(SourceError):
    """Transient network failure that persisted through bounded retries."""


class ProtocolError(SourceError):
    """The remote endpoint answered with an unparseable payload."""
