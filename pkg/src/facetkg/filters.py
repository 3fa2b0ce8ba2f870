"""Typed filter specs and their evaluation over comparison tables.

Combination semantics: one spec per property, AND across properties,
OR within a text spec's value set. Cells are multi-valued, so:

* a positive spec accepts a cell iff SOME value satisfies its predicate,
  and a missing cell never satisfies it;
* a negated spec accepts a cell iff NO value satisfies the underlying
  predicate, and a missing cell always satisfies it.

``NumericCmp`` has no negated flag: NEQ *is* the negated twin of EQ
(exclusion), so ``NEQ 100`` rejects any contribution that has 100 among
its values rather than accepting one that also has something else.

Values only satisfy predicates of their own kind: numeric specs see number
values, date specs see date values. Text specs match the candidate text of
any value (the same strings string facets offer), exact and case-sensitive.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from decimal import Decimal
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

from .comparison import EMPTY_TABLE, ComparisonTable, project
from .errors import InvalidRequestError, UnknownPropertyError
from .facets import FacetDescriptor
from .model import (
    DateValue,
    NumberValue,
    Value,
    is_number_lexical,
    parse_date,
)

NUMERIC_OPS = ("eq", "neq", "lt", "le", "gt", "ge")
DATE_OPS = ("on", "before", "after")


@dataclass(frozen=True)
class TextAnyOf:
    """Match any of the given value texts; negated = exclude them all."""

    values: frozenset[str]
    negated: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", frozenset(self.values))
        if not self.values:
            raise ValueError("TextAnyOf needs at least one value")


@dataclass(frozen=True)
class NumericCmp:
    op: str  # eq | neq | lt | le | gt | ge
    operand: Decimal

    def __post_init__(self) -> None:
        if self.op not in NUMERIC_OPS:
            raise ValueError(f"op must be one of {NUMERIC_OPS}: {self.op!r}")
        object.__setattr__(self, "operand", Decimal(self.operand))


@dataclass(frozen=True)
class NumericRange:
    """Inclusive numeric range; negated = exclude everything inside it."""

    low: Decimal
    high: Decimal
    negated: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "low", Decimal(self.low))
        object.__setattr__(self, "high", Decimal(self.high))
        if self.low > self.high:
            raise ValueError("range low must be <= high")


@dataclass(frozen=True)
class DateCmp:
    op: str  # on | before | after
    date: dt.date
    negated: bool = False

    def __post_init__(self) -> None:
        if self.op not in DATE_OPS:
            raise ValueError(f"op must be one of {DATE_OPS}: {self.op!r}")


@dataclass(frozen=True)
class DateRange:
    """Inclusive date range (a duration); negated = exclude it."""

    start: dt.date
    end: dt.date
    negated: bool = False

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError("range start must be <= end")


FilterSpec = Union[TextAnyOf, NumericCmp, NumericRange, DateCmp, DateRange]


@dataclass(frozen=True)
class FilterConfig:
    """At most one spec per property; evaluated conjunctively."""

    clauses: Mapping[str, FilterSpec] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", MappingProxyType(dict(self.clauses)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FilterConfig):
            return NotImplemented
        return dict(self.clauses) == dict(other.clauses)

    def __bool__(self) -> bool:
        return bool(self.clauses)

    @classmethod
    def empty(cls) -> "FilterConfig":
        return cls({})

    def with_clause(self, property_id: str, spec: FilterSpec) -> "FilterConfig":
        merged = dict(self.clauses)
        merged[property_id] = spec
        return FilterConfig(merged)

    def without(self, property_id: str) -> "FilterConfig":
        remaining = {p: s for p, s in self.clauses.items() if p != property_id}
        return FilterConfig(remaining)


# -- evaluation -------------------------------------------------------------


def _is_negated(spec: FilterSpec) -> bool:
    if isinstance(spec, NumericCmp):
        return spec.op == "neq"
    return spec.negated


def _satisfies(spec: FilterSpec, value: Value) -> bool:
    """The underlying (never-negated) predicate of a spec on one value."""
    if isinstance(spec, TextAnyOf):
        return value.candidate_text in spec.values
    if isinstance(spec, NumericCmp):
        if not isinstance(value, NumberValue):
            return False
        d = value.decimal
        op = "eq" if spec.op == "neq" else spec.op
        if op == "eq":
            return d == spec.operand
        if op == "lt":
            return d < spec.operand
        if op == "le":
            return d <= spec.operand
        if op == "gt":
            return d > spec.operand
        return d >= spec.operand
    if isinstance(spec, NumericRange):
        return isinstance(value, NumberValue) and spec.low <= value.decimal <= spec.high
    if isinstance(spec, DateCmp):
        if not isinstance(value, DateValue):
            return False
        if spec.op == "on":
            return value.date == spec.date
        if spec.op == "before":
            return value.date < spec.date
        return value.date > spec.date
    if isinstance(spec, DateRange):
        return isinstance(value, DateValue) and spec.start <= value.date <= spec.end
    raise TypeError(f"not a FilterSpec: {spec!r}")


def eval_cell(spec: FilterSpec, values: Sequence[Value]) -> bool:
    """Evaluate one spec against one cell (empty sequence = missing cell)."""
    hit = any(_satisfies(spec, v) for v in values)
    return not hit if _is_negated(spec) else hit


def apply_filters(table: ComparisonTable, config: FilterConfig) -> ComparisonTable:
    """Keep the contributions satisfying every clause.

    Returns the projected table; when nothing survives, the result is the
    empty table (zero columns and rows), not an error. Clauses must refer to
    properties present in the table.
    """
    missing = [p for p in config.clauses if not table.has_property(p)]
    if missing:
        raise UnknownPropertyError(f"not in table: {', '.join(sorted(missing))}")
    keep = [
        c.id
        for c in table.contributions
        if all(
            eval_cell(spec, table.cell(prop, c.id))
            for prop, spec in config.clauses.items()
        )
    ]
    if not keep:
        return EMPTY_TABLE
    return project(table, keep)


# -- config validation -------------------------------------------------------

_SPEC_KINDS = {
    TextAnyOf: "string",
    NumericCmp: "numeric",
    NumericRange: "numeric",
    DateCmp: "date",
    DateRange: "date",
}


@dataclass(frozen=True)
class FilterWarning:
    property: str
    code: str  # kind-mismatch | value-not-a-candidate | operand-out-of-range | unknown-property
    message: str


def validate_config(
    config: FilterConfig,
    table: ComparisonTable,
    facets: Iterable[FacetDescriptor],
) -> list[FilterWarning]:
    """Non-fatal consistency checks of a config against a table's facets."""
    by_property = {f.property: f for f in facets}
    warnings: list[FilterWarning] = []
    for prop in sorted(config.clauses):
        spec = config.clauses[prop]
        facet = by_property.get(prop)
        if facet is None:
            warnings.append(
                FilterWarning(prop, "unknown-property", f"no facet for {prop!r}")
            )
            continue
        spec_kind = _SPEC_KINDS[type(spec)]
        if spec_kind != facet.kind:
            warnings.append(
                FilterWarning(
                    prop,
                    "kind-mismatch",
                    f"{spec_kind} filter on a {facet.kind} facet",
                )
            )
            continue
        if isinstance(spec, TextAnyOf):
            candidates = {c.value for c in facet.candidates}
            for value in sorted(spec.values):
                if value not in candidates:
                    warnings.append(
                        FilterWarning(
                            prop,
                            "value-not-a-candidate",
                            f"{value!r} is not among the facet's candidates",
                        )
                    )
        elif isinstance(spec, (NumericCmp, NumericRange)):
            warnings.extend(_numeric_bound_warnings(prop, spec, facet))
    return warnings


def _numeric_bound_warnings(
    prop: str, spec: Union[NumericCmp, NumericRange], facet: FacetDescriptor
) -> list[FilterWarning]:
    if not isinstance(facet.min, NumberValue) or not isinstance(facet.max, NumberValue):
        return []
    lo, hi = facet.min.decimal, facet.max.decimal
    operands = (
        [("operand", spec.operand)]
        if isinstance(spec, NumericCmp)
        else [("low", spec.low), ("high", spec.high)]
    )
    return [
        FilterWarning(
            prop,
            "operand-out-of-range",
            f"{name} {value} is outside the observed range [{lo}, {hi}]",
        )
        for name, value in operands
        if value < lo or value > hi
    ]


# -- canonical tree form ------------------------------------------------------


def spec_to_tree(spec: FilterSpec) -> dict:
    if isinstance(spec, TextAnyOf):
        return {
            "kind": "text-any-of",
            "values": sorted(spec.values),
            "negated": spec.negated,
        }
    if isinstance(spec, NumericCmp):
        return {"kind": "numeric-cmp", "op": spec.op, "operand": str(spec.operand)}
    if isinstance(spec, NumericRange):
        return {
            "kind": "numeric-range",
            "low": str(spec.low),
            "high": str(spec.high),
            "negated": spec.negated,
        }
    if isinstance(spec, DateCmp):
        return {
            "kind": "date-cmp",
            "op": spec.op,
            "date": spec.date.isoformat(),
            "negated": spec.negated,
        }
    if isinstance(spec, DateRange):
        return {
            "kind": "date-range",
            "start": spec.start.isoformat(),
            "end": spec.end.isoformat(),
            "negated": spec.negated,
        }
    raise TypeError(f"not a FilterSpec: {spec!r}")


def config_to_tree(config: FilterConfig) -> dict:
    return {prop: spec_to_tree(spec) for prop, spec in config.clauses.items()}


def _require(tree: dict, key: str, types: type | tuple) -> object:
    if key not in tree:
        raise InvalidRequestError(f"filter spec is missing {key!r}")
    value = tree[key]
    if not isinstance(value, types):
        raise InvalidRequestError(f"filter spec field {key!r} has the wrong type")
    return value


def _decimal_field(tree: dict, key: str) -> Decimal:
    raw = _require(tree, key, str)
    if not is_number_lexical(raw):
        raise InvalidRequestError(f"filter spec field {key!r} is not a decimal: {raw!r}")
    return Decimal(raw)


def _date_field(tree: dict, key: str) -> dt.date:
    raw = _require(tree, key, str)
    try:
        return parse_date(raw)
    except ValueError as exc:
        raise InvalidRequestError(str(exc)) from exc


def spec_from_tree(tree: object) -> FilterSpec:
    if not isinstance(tree, dict):
        raise InvalidRequestError("filter spec must be an object")
    kind = tree.get("kind")
    negated = tree.get("negated", False)
    if not isinstance(negated, bool):
        raise InvalidRequestError("filter spec field 'negated' must be a boolean")
    try:
        if kind == "text-any-of":
            values = _require(tree, "values", list)
            if not all(isinstance(v, str) for v in values):
                raise InvalidRequestError("'values' must be a list of strings")
            return TextAnyOf(frozenset(values), negated)
        if kind == "numeric-cmp":
            op = _require(tree, "op", str)
            return NumericCmp(op, _decimal_field(tree, "operand"))
        if kind == "numeric-range":
            return NumericRange(
                _decimal_field(tree, "low"), _decimal_field(tree, "high"), negated
            )
        if kind == "date-cmp":
            op = _require(tree, "op", str)
            return DateCmp(op, _date_field(tree, "date"), negated)
        if kind == "date-range":
            return DateRange(
                _date_field(tree, "start"), _date_field(tree, "end"), negated
            )
    except ValueError as exc:
        raise InvalidRequestError(str(exc)) from exc
    raise InvalidRequestError(f"unknown filter spec kind: {kind!r}")


def config_from_tree(tree: object) -> FilterConfig:
    if not isinstance(tree, dict):
        raise InvalidRequestError("filter config must be an object of property -> spec")
    clauses: dict[str, FilterSpec] = {}
    for prop, spec_tree in tree.items():
        if not isinstance(prop, str) or not prop:
            raise InvalidRequestError("filter config keys must be property ids")
        clauses[prop] = spec_from_tree(spec_tree)
    return FilterConfig(clauses)
