"""Dynamic facet inference over comparison tables.

Each property row of a comparison becomes one facet. The facet kind comes
from the property's template when one exists (number -> numeric, date ->
date, text/link -> string); untemplated rows are sniffed from their values:
all-decimal rows become numeric, all-date rows become date, anything mixed
falls back to string. String facets carry candidate values with
per-contribution counts; numeric and date facets carry the observed bounds.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Optional

from .comparison import ComparisonTable
from .errors import WrongFacetKindError
from .model import (
    DateValue,
    NumberValue,
    TextValue,
    Value,
    is_date_lexical,
    is_number_lexical,
)


@dataclass(frozen=True)
class Candidate:
    """One selectable value of a string facet; ``count`` is the number of
    contributions carrying it (a contribution counts once per value)."""

    value: str
    count: int


@dataclass(frozen=True)
class FacetDescriptor:
    property: str
    kind: str  # string | numeric | date
    candidates: tuple[Candidate, ...] = ()
    min: Optional[Value] = None
    max: Optional[Value] = None


def _sniffs_numeric(value: Value) -> bool:
    if isinstance(value, NumberValue):
        return True
    if isinstance(value, TextValue):
        return is_number_lexical(value.text)
    return False


def _sniffs_date(value: Value) -> bool:
    if isinstance(value, DateValue):
        return True
    if isinstance(value, TextValue):
        return is_date_lexical(value.text)
    return False


def _resolve_kind(datatype: Optional[str], values: list[Value]) -> str:
    if datatype == "number":
        return "numeric"
    if datatype == "date":
        return "date"
    if datatype in ("text", "link"):
        return "string"
    # No template: sniff. Links are resource pointers and always read as text.
    if values and all(_sniffs_numeric(v) for v in values):
        return "numeric"
    if values and all(_sniffs_date(v) for v in values):
        return "date"
    return "string"


def infer_facets(
    table: ComparisonTable, templates: Optional[Mapping[str, str]] = None
) -> list[FacetDescriptor]:
    """One descriptor per property row, in row order.

    ``templates`` maps property id -> declared datatype; when omitted, the
    datatypes embedded in the table (recorded at build time) are used.
    A declared template always wins over value sniffing. Bounds (min/max)
    consider only values of the conforming kind; off-kind values in a
    numeric or date row are left out rather than coerced.
    """
    out: list[FacetDescriptor] = []
    for prop in table.properties:
        if templates is not None:
            datatype = templates.get(prop.id)
        else:
            datatype = prop.datatype
        row = [(c.id, table.cell(prop.id, c.id)) for c in table.contributions]
        values = [v for _, cell in row for v in cell]
        kind = _resolve_kind(datatype, values)

        if kind == "string":
            counts: Counter[str] = Counter()
            for _, cell in row:
                for text in {v.candidate_text for v in cell}:
                    counts[text] += 1
            candidates = tuple(
                Candidate(text, n)
                for text, n in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
            )
            out.append(FacetDescriptor(prop.id, "string", candidates))
            continue

        if kind == "numeric":
            conforming = [v for v in values if isinstance(v, NumberValue)]
            lo = min(conforming, key=lambda v: v.decimal) if conforming else None
            hi = max(conforming, key=lambda v: v.decimal) if conforming else None
        else:  # date
            conforming = [v for v in values if isinstance(v, DateValue)]
            lo = min(conforming, key=lambda v: v.date) if conforming else None
            hi = max(conforming, key=lambda v: v.date) if conforming else None
        out.append(FacetDescriptor(prop.id, kind, (), lo, hi))
    return out


def autocomplete(facet: FacetDescriptor, prefix: str, limit: int) -> list[str]:
    """Candidate values whose case-insensitive form starts with ``prefix``,
    by count (descending) then value (case-insensitive), truncated to ``limit``.
    An empty prefix matches every candidate."""
    if facet.kind != "string":
        raise WrongFacetKindError(
            f"autocomplete needs a string facet, {facet.property!r} is {facet.kind}"
        )
    if limit < 1:
        raise ValueError("limit must be >= 1")
    folded = prefix.casefold()
    hits = [c for c in facet.candidates if c.value.casefold().startswith(folded)]
    hits.sort(key=lambda c: (-c.count, c.value.casefold(), c.value))
    return [c.value for c in hits[:limit]]


def facets_to_tree(facets: list[FacetDescriptor]) -> list[dict]:
    def bound(value: Optional[Value]) -> Optional[dict]:
        if value is None:
            return None
        return {"kind": value.kind, "lexical": value.canonical_text}

    return [
        {
            "property": f.property,
            "kind": f.kind,
            "candidates": [{"value": c.value, "count": c.count} for c in f.candidates],
            "min": bound(f.min),
            "max": bound(f.max),
        }
        for f in facets
    ]
