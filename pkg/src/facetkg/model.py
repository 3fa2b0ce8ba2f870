"""Typed values, statements and property templates.

A statement is a subject-predicate-object triple whose object is one of four
value kinds: text, number, date or link. Numbers keep the exact lexical form
they were written with but compare numerically (as ``Decimal``); dates are
whole calendar days; links point at another resource and carry a display
label.
"""

from __future__ import annotations

import datetime as dt
import re
from dataclasses import dataclass
from decimal import Decimal
from typing import ClassVar, Union

from .errors import InvalidIdError

DATATYPES = ("text", "number", "date", "link")

_WHITESPACE = re.compile(r"\s")
# Optional sign, plain digits, optional decimal point. No exponent notation.
_NUMBER_LEXICAL = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)$")
_DATE_LEXICAL = re.compile(r"^(\d{4})-(\d{2})-(\d{2})$")


def check_resource_id(value: str) -> str:
    """Validate an opaque resource id: non-empty, no whitespace anywhere."""
    if not isinstance(value, str) or not value or _WHITESPACE.search(value):
        raise InvalidIdError(f"invalid resource id: {value!r}")
    return value


def parse_date(lexical: str) -> dt.date:
    """Parse a strict ``YYYY-MM-DD`` calendar date."""
    m = _DATE_LEXICAL.match(lexical)
    if not m:
        raise ValueError(f"not a YYYY-MM-DD date: {lexical!r}")
    try:
        return dt.date(int(m.group(1)), int(m.group(2)), int(m.group(3)))
    except ValueError as exc:
        raise ValueError(f"not a valid calendar date: {lexical!r}") from exc


def is_number_lexical(text: str) -> bool:
    return bool(_NUMBER_LEXICAL.match(text))


def is_date_lexical(text: str) -> bool:
    try:
        parse_date(text)
    except ValueError:
        return False
    return True


@dataclass(frozen=True)
class TextValue:
    kind: ClassVar[str] = "text"
    text: str

    @property
    def canonical_text(self) -> str:
        return self.text

    @property
    def candidate_text(self) -> str:
        return self.text


@dataclass(frozen=True, eq=False)
class NumberValue:
    """A dimensionless decimal. ``lexical`` round-trips exactly; equality and
    ordering are numeric, so ``NumberValue("100")`` equals ``NumberValue("100.0")``."""

    kind: ClassVar[str] = "number"
    lexical: str

    def __post_init__(self) -> None:
        if not _NUMBER_LEXICAL.match(self.lexical):
            raise ValueError(f"not a decimal number: {self.lexical!r}")
        object.__setattr__(self, "_decimal", Decimal(self.lexical))

    @property
    def decimal(self) -> Decimal:
        return self._decimal  # type: ignore[attr-defined]

    @property
    def canonical_text(self) -> str:
        return self.lexical

    @property
    def candidate_text(self) -> str:
        return self.lexical

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NumberValue):
            return NotImplemented
        return self.decimal == other.decimal

    def __hash__(self) -> int:
        return hash(("number", self.decimal))

    def __repr__(self) -> str:
        return f"NumberValue({self.lexical!r})"


@dataclass(frozen=True)
class DateValue:
    kind: ClassVar[str] = "date"
    date: dt.date

    @property
    def canonical_text(self) -> str:
        return self.date.isoformat()

    @property
    def candidate_text(self) -> str:
        return self.date.isoformat()


@dataclass(frozen=True)
class LinkValue:
    """A pointer to another resource plus its display label."""

    kind: ClassVar[str] = "link"
    target: str
    label: str

    @property
    def canonical_text(self) -> str:
        return f"{self.target}|{self.label}"

    @property
    def candidate_text(self) -> str:
        # Facet candidates and text filters see the label, not the raw id.
        return self.label


Value = Union[TextValue, NumberValue, DateValue, LinkValue]


def value_from_lexical(kind: str, lexical: str) -> Value:
    """Build a value from its dump/serialization form. Raises ValueError."""
    if kind == "text":
        return TextValue(lexical)
    if kind == "number":
        return NumberValue(lexical)
    if kind == "date":
        return DateValue(parse_date(lexical))
    if kind == "link":
        target, sep, label = lexical.partition("|")
        if not sep:
            raise ValueError(f"link lexical must be 'targetId|label': {lexical!r}")
        return LinkValue(check_resource_id(target), label)
    raise ValueError(f"unknown value kind: {kind!r}")


def value_sort_key(value: Value) -> tuple[str, str]:
    """Deterministic cell ordering: canonical text, kind as tiebreak."""
    return (value.canonical_text, value.kind)


@dataclass(frozen=True)
class Statement:
    """One (subject, predicate, object-value) triple."""

    subject: str
    predicate: str
    value: Value

    def __post_init__(self) -> None:
        check_resource_id(self.subject)
        check_resource_id(self.predicate)


@dataclass(frozen=True)
class PropertyTemplate:
    """Declares the expected datatype of a predicate; drives facet inference."""

    predicate: str
    datatype: str
    label: str = ""

    def __post_init__(self) -> None:
        check_resource_id(self.predicate)
        if self.datatype not in DATATYPES:
            raise ValueError(f"datatype must be one of {DATATYPES}: {self.datatype!r}")
