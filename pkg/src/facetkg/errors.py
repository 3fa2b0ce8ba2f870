"""Exception taxonomy shared by all facetkg modules.

Every exception carries a stable machine-readable ``code`` so the CLI and
the HTTP service can map failures without string-matching messages.
"""

from __future__ import annotations


class FacetSearchError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "internal"


class InvalidIdError(FacetSearchError):
    code = "invalid-id"


class TemplateConflictError(FacetSearchError):
    code = "template-conflict"


class UnknownContributionError(FacetSearchError):
    code = "unknown-contribution"


class DuplicateContributionError(FacetSearchError):
    code = "duplicate-contribution"


class EmptyProjectionError(FacetSearchError):
    code = "empty-projection"


class UnknownPropertyError(FacetSearchError):
    code = "unknown-property"


class AmbiguousLabelError(FacetSearchError):
    code = "ambiguous-label"


class DuplicateClauseError(FacetSearchError):
    code = "duplicate-clause"


class WrongFacetKindError(FacetSearchError):
    code = "wrong-facet-kind"


class FilterSyntaxError(FacetSearchError):
    """Malformed filter expression.

    ``position`` is a 0-based character offset into the source text;
    ``expected`` names the tokens that would have been valid there.
    """

    code = "syntax-error"

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        hint = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at column {position + 1}{hint}")
        self.position = position
        self.expected = expected


class InvalidRequestError(FacetSearchError):
    """Caller-supplied input is structurally invalid (bad shape, empty list...)."""

    code = "invalid-request"


class NotFoundError(FacetSearchError):
    code = "not-found"


class MalformedIdError(FacetSearchError):
    code = "malformed-id"


class IntegrityError(FacetSearchError):
    code = "integrity-failure"


class HashCollisionError(FacetSearchError):
    code = "hash-collision"


class StorageError(FacetSearchError):
    code = "storage-failure"


class IngestFailureError(FacetSearchError):
    code = "ingest-failure"


class BindFailureError(FacetSearchError):
    code = "bind-failure"
