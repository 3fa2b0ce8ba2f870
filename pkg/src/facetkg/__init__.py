"""facetkg: faceted search over scholarly knowledge-graph comparisons.

Build tabular comparisons of research contributions from a typed statement
store, infer per-property facets dynamically, evaluate typed filters, and
persist filtered views under permanent content-addressed ids.
"""

from .canonical import canonical_json_bytes, from_canonical_json
from .comparison import (
    ComparisonTable,
    ContributionRef,
    PropertyRef,
    build_comparison,
    project,
    resolve_property,
    table_from_tree,
    table_to_tree,
)
from .errors import (
    AmbiguousLabelError,
    DuplicateClauseError,
    DuplicateContributionError,
    EmptyProjectionError,
    FacetSearchError,
    FilterSyntaxError,
    HashCollisionError,
    IntegrityError,
    InvalidIdError,
    InvalidRequestError,
    MalformedIdError,
    NotFoundError,
    StorageError,
    TemplateConflictError,
    UnknownContributionError,
    UnknownPropertyError,
    WrongFacetKindError,
)
from .facets import (
    Candidate,
    FacetDescriptor,
    autocomplete,
    facets_to_tree,
    infer_facets,
)
from .filters import (
    DateCmp,
    DateRange,
    FilterConfig,
    FilterSpec,
    FilterWarning,
    NumericCmp,
    NumericRange,
    TextAnyOf,
    apply_filters,
    config_from_tree,
    config_to_tree,
    eval_cell,
    validate_config,
)
from .filterexpr import parse_filter_expr, serialize_filter_expr
from .model import (
    DateValue,
    LinkValue,
    NumberValue,
    PropertyTemplate,
    Statement,
    TextValue,
    Value,
    value_from_lexical,
)
from .snapshots import SavedComparison, SnapshotStore, snapshot_bytes, snapshot_id
from .store import GraphStore, IngestReport

__version__ = "0.1.0"

__all__ = [
    "AmbiguousLabelError",
    "Candidate",
    "ComparisonTable",
    "ContributionRef",
    "DateCmp",
    "DateRange",
    "DateValue",
    "DuplicateClauseError",
    "DuplicateContributionError",
    "EmptyProjectionError",
    "FacetDescriptor",
    "FacetSearchError",
    "FilterConfig",
    "FilterSpec",
    "FilterSyntaxError",
    "FilterWarning",
    "GraphStore",
    "HashCollisionError",
    "IngestReport",
    "IntegrityError",
    "InvalidIdError",
    "InvalidRequestError",
    "LinkValue",
    "MalformedIdError",
    "NotFoundError",
    "NumberValue",
    "NumericCmp",
    "NumericRange",
    "PropertyRef",
    "PropertyTemplate",
    "SavedComparison",
    "SnapshotStore",
    "Statement",
    "StorageError",
    "TemplateConflictError",
    "TextAnyOf",
    "TextValue",
    "UnknownContributionError",
    "UnknownPropertyError",
    "Value",
    "WrongFacetKindError",
    "apply_filters",
    "autocomplete",
    "build_comparison",
    "canonical_json_bytes",
    "config_from_tree",
    "config_to_tree",
    "eval_cell",
    "facets_to_tree",
    "from_canonical_json",
    "infer_facets",
    "parse_filter_expr",
    "project",
    "resolve_property",
    "serialize_filter_expr",
    "snapshot_bytes",
    "snapshot_id",
    "table_from_tree",
    "table_to_tree",
    "validate_config",
    "value_from_lexical",
]
