"""Tabular comparison of contributions.

Rows are properties, columns are contributions, cells hold the (possibly
multiple) values a contribution has for a property. Tables are immutable
after construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    AmbiguousLabelError,
    DuplicateContributionError,
    EmptyProjectionError,
    InvalidRequestError,
    UnknownContributionError,
    UnknownPropertyError,
)
from .model import Value, value_from_lexical, value_sort_key
from .store import GraphStore

Cells = Mapping[tuple[str, str], tuple[Value, ...]]


@dataclass(frozen=True)
class ContributionRef:
    id: str
    label: str


@dataclass(frozen=True)
class PropertyRef:
    id: str
    label: str
    datatype: Optional[str]  # declared template datatype, None if untemplated


@dataclass(frozen=True)
class ComparisonTable:
    """Contributions (columns) x properties (rows) with multi-valued cells.

    ``cells`` maps (property id, contribution id) to an ordered value tuple;
    an absent key means the contribution has no value for that property.
    """

    contributions: tuple[ContributionRef, ...]
    properties: tuple[PropertyRef, ...]
    cells: Cells

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", MappingProxyType(dict(self.cells)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComparisonTable):
            return NotImplemented
        return (
            self.contributions == other.contributions
            and self.properties == other.properties
            and dict(self.cells) == dict(other.cells)
        )

    def cell(self, property_id: str, contribution_id: str) -> tuple[Value, ...]:
        return self.cells.get((property_id, contribution_id), ())

    def contribution_ids(self) -> list[str]:
        return [c.id for c in self.contributions]

    def property_ids(self) -> list[str]:
        return [p.id for p in self.properties]

    def has_property(self, property_id: str) -> bool:
        return any(p.id == property_id for p in self.properties)

    def datatype(self, property_id: str) -> Optional[str]:
        for p in self.properties:
            if p.id == property_id:
                return p.datatype
        return None


EMPTY_TABLE = ComparisonTable(contributions=(), properties=(), cells={})


def build_comparison(store: GraphStore, contribution_ids: Sequence[str]) -> ComparisonTable:
    """Build the comparison table for the given contributions.

    Properties are the union of predicates on the listed contributions,
    ordered by how many contributions carry them (descending), then label,
    then id. Columns keep the input order. Every id must have at least one
    statement in the store.
    """
    ids = list(contribution_ids)
    if not ids:
        raise InvalidRequestError("contribution list must not be empty")
    seen: set[str] = set()
    for cid in ids:
        if cid in seen:
            raise DuplicateContributionError(f"duplicate contribution id: {cid!r}")
        seen.add(cid)
        if not store.has_subject(cid):
            raise UnknownContributionError(f"no statements for contribution: {cid!r}")

    cells: dict[tuple[str, str], list[Value]] = {}
    coverage: dict[str, set[str]] = {}
    for cid in ids:
        for st in store.match_statements(subject=cid):
            cells.setdefault((st.predicate, cid), []).append(st.value)
            coverage.setdefault(st.predicate, set()).add(cid)

    def row_key(pid: str) -> tuple[int, str, str]:
        return (-len(coverage[pid]), store.label(pid), pid)

    properties = tuple(
        PropertyRef(pid, store.label(pid), store.datatypes().get(pid))
        for pid in sorted(coverage, key=row_key)
    )
    contributions = tuple(ContributionRef(cid, store.label(cid)) for cid in ids)
    frozen_cells = {
        key: tuple(sorted(values, key=value_sort_key)) for key, values in cells.items()
    }
    return ComparisonTable(contributions, properties, frozen_cells)


def project(table: ComparisonTable, keep: Iterable[str]) -> ComparisonTable:
    """Restrict the table to a subset of its contributions.

    Column and row order are preserved; property rows left with no values
    at all are dropped. ``keep`` must be a non-empty subset of the table's
    contributions.
    """
    wanted = set(keep)
    if not wanted:
        raise EmptyProjectionError("projection must keep at least one contribution")
    known = {c.id for c in table.contributions}
    unknown = wanted - known
    if unknown:
        raise UnknownContributionError(
            f"not in table: {', '.join(sorted(unknown))}"
        )
    contributions = tuple(c for c in table.contributions if c.id in wanted)
    cells = {
        (pid, cid): values
        for (pid, cid), values in table.cells.items()
        if cid in wanted
    }
    populated = {pid for (pid, _) in cells}
    properties = tuple(p for p in table.properties if p.id in populated)
    return ComparisonTable(contributions, properties, cells)


def resolve_property(table: ComparisonTable, name: str) -> str:
    """Resolve a property by exact id, then unique label, then unique
    case-insensitive label. Raises UnknownPropertyError / AmbiguousLabelError."""
    for p in table.properties:
        if p.id == name:
            return p.id
    exact = [p.id for p in table.properties if p.label == name]
    if len(exact) == 1:
        return exact[0]
    if len(exact) > 1:
        raise AmbiguousLabelError(f"label {name!r} matches properties: {exact}")
    folded = [p.id for p in table.properties if p.label.casefold() == name.casefold()]
    if len(folded) == 1:
        return folded[0]
    if len(folded) > 1:
        raise AmbiguousLabelError(f"label {name!r} matches properties: {folded}")
    raise UnknownPropertyError(f"no property with id or label {name!r}")


# -- canonical tree form ---------------------------------------------------


def table_to_tree(table: ComparisonTable) -> dict:
    """Serializable tree; pair with canonical_json_bytes for wire/storage form.

    Cell entries are sorted by (property, contribution) so the canonical
    bytes do not depend on construction order.
    """
    return {
        "contributions": [{"id": c.id, "label": c.label} for c in table.contributions],
        "properties": [
            {"id": p.id, "label": p.label, "datatype": p.datatype}
            for p in table.properties
        ],
        "cells": [
            {
                "property": pid,
                "contribution": cid,
                "values": [{"kind": v.kind, "lexical": v.canonical_text} for v in values],
            }
            for (pid, cid), values in sorted(table.cells.items())
        ],
    }


def table_from_tree(tree: dict) -> ComparisonTable:
    """Inverse of table_to_tree. Raises ValueError on malformed trees."""
    try:
        contributions = tuple(
            ContributionRef(entry["id"], entry["label"])
            for entry in tree["contributions"]
        )
        properties = tuple(
            PropertyRef(entry["id"], entry["label"], entry["datatype"])
            for entry in tree["properties"]
        )
        cells = {
            (entry["property"], entry["contribution"]): tuple(
                value_from_lexical(v["kind"], v["lexical"]) for v in entry["values"]
            )
            for entry in tree["cells"]
        }
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed table tree: {exc}") from exc
    return ComparisonTable(contributions, properties, cells)
