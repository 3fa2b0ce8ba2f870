"""The filter-expression mini-language.

Grammar (whitespace around tokens is ignored):

    expr      := clause (';' clause)*
    clause    := prop cmp | prop setop | prop rangeop
    cmp       := ('=' | '!=' | '<' | '<=' | '>' | '>=') scalar
    setop     := ('=' | '!=') '[' scalar ('|' scalar)* ']'
    rangeop   := ('in' | 'not in') scalar '..' scalar
    prop      := bare token or double-quoted string
    scalar    := number | date (YYYY-MM-DD) | quoted or bare string

Properties resolve by exact id first, then unique label. Bare property
tokens may contain spaces; quote the property if its name contains the
words ``in``/``not`` or any of ``; | [ ] " = ! < > ``. Inside quotes,
``\\"`` and ``\\\\`` escape a quote and a backslash.

How an operator maps to a spec depends on the property's facet kind:
string facets take ``=``/``!=`` with a scalar or a ``[a|b|c]`` set; numeric
facets take all six comparators and ``in``/``not in`` ranges; date facets
take ``=`` (on), ``!=`` (excluded day), ``<`` (before), ``>`` (after) and
ranges. ``!=`` and ``not in`` set ``negated``.
"""

from __future__ import annotations

import re
from decimal import Decimal
from typing import Optional

from .comparison import ComparisonTable, resolve_property
from .errors import DuplicateClauseError, FilterSyntaxError
from .facets import infer_facets
from .filters import (
    DateCmp,
    DateRange,
    FilterConfig,
    FilterSpec,
    NumericCmp,
    NumericRange,
    TextAnyOf,
)
from .model import is_number_lexical, parse_date

# Earliest thing that can end a bare property token: a comparison operator,
# a range keyword, or a clause separator (which means the operator is missing).
_PROP_END = re.compile(r"!=|<=|>=|=|<|>|!|\bnot\s+in\b|\bin\b|;")
_CMP_SYMBOLS = {"=": "eq", "!=": "neq", "<": "lt", "<=": "le", ">": "gt", ">=": "ge"}
_DATE_CMP = {"=": "on", "!=": "on", "<": "before", ">": "after"}

_SAFE_BARE = re.compile(r'[;|\[\]"=!<>\t\n\r]')
_PROP_KEYWORD = re.compile(r"\b(?:in|not)\b")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, message: str, expected: tuple[str, ...] = (), pos: Optional[int] = None):
        raise FilterSyntaxError(message, self.pos if pos is None else pos, expected)

    def read_quoted(self) -> str:
        start = self.pos
        assert self.text[self.pos] == '"'
        self.pos += 1
        out: list[str] = []
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "\\" and self.pos + 1 < len(self.text) and self.text[self.pos + 1] in '"\\':
                out.append(self.text[self.pos + 1])
                self.pos += 2
                continue
            if ch == '"':
                self.pos += 1
                return "".join(out)
            out.append(ch)
            self.pos += 1
        self.fail("unterminated quoted string", ('"',), pos=start)

    def read_bare(self, terminators: tuple[str, ...]) -> str:
        """Bare token up to the earliest terminator (or end of text)."""
        end = len(self.text)
        for term in terminators:
            idx = self.text.find(term, self.pos)
            if idx != -1:
                end = min(end, idx)
        token = self.text[self.pos : end]
        self.pos = end
        return token.strip()


def _parse_scalar(scanner: _Scanner, terminators: tuple[str, ...]) -> tuple[str, int]:
    scanner.skip_ws()
    start = scanner.pos
    if scanner.peek() == '"':
        return scanner.read_quoted(), start
    token = scanner.read_bare(terminators)
    if not token:
        scanner.fail("expected a value", ("scalar",), pos=start)
    return token, start


def _typed_scalar(scanner: _Scanner, kind: str, raw: str, pos: int):
    if kind == "numeric":
        if not is_number_lexical(raw):
            scanner.fail(f"not a number: {raw!r}", ("number",), pos=pos)
        return Decimal(raw)
    if kind == "date":
        try:
            return parse_date(raw)
        except ValueError:
            scanner.fail(f"not a YYYY-MM-DD date: {raw!r}", ("date",), pos=pos)
    return raw


def _parse_prop(scanner: _Scanner) -> str:
    scanner.skip_ws()
    if scanner.at_end():
        scanner.fail("expected a property name", ("property",))
    if scanner.peek() == '"':
        return scanner.read_quoted()
    match = _PROP_END.search(scanner.text, scanner.pos)
    if match is None or match.group() == ";":
        where = match.start() if match else len(scanner.text)
        scanner.fail(
            "expected a comparison operator after the property name",
            ("=", "!=", "<", "<=", ">", ">=", "in", "not in"),
            pos=where,
        )
    token = scanner.text[scanner.pos : match.start()].strip()
    if not token:
        scanner.fail("expected a property name", ("property",))
    scanner.pos = match.start()
    return token


def _parse_operator(scanner: _Scanner) -> str:
    scanner.skip_ws()
    rest = scanner.text[scanner.pos :]
    for sym in ("!=", "<=", ">=", "=", "<", ">"):
        if rest.startswith(sym):
            scanner.pos += len(sym)
            return sym
    keyword = re.match(r"not\s+in\b|in\b", rest)
    if keyword:
        scanner.pos += keyword.end()
        return "not in" if keyword.group().startswith("not") else "in"
    scanner.fail(
        "expected a comparison operator",
        ("=", "!=", "<", "<=", ">", ">=", "in", "not in"),
    )


def _parse_set(scanner: _Scanner, facet_kind: str) -> frozenset[str]:
    assert scanner.peek() == "["
    open_pos = scanner.pos
    scanner.pos += 1
    if facet_kind != "string":
        scanner.fail(
            f"value sets apply to string-facet properties only (facet is {facet_kind})",
            ("scalar",),
            pos=open_pos,
        )
    values: set[str] = set()
    while True:
        raw, _ = _parse_scalar(scanner, terminators=("|", "]", ";"))
        values.add(raw)
        scanner.skip_ws()
        if scanner.peek() == "|":
            scanner.pos += 1
            continue
        if scanner.peek() == "]":
            scanner.pos += 1
            return frozenset(values)
        scanner.fail("unterminated value set", ("|", "]"), pos=open_pos)


def _parse_clause(scanner: _Scanner, table: ComparisonTable, facet_kinds: dict[str, str]) -> tuple[str, FilterSpec]:
    prop_text = _parse_prop(scanner)
    prop = resolve_property(table, prop_text)
    kind = facet_kinds[prop]

    op_pos = scanner.pos
    op = _parse_operator(scanner)

    if op in ("in", "not in"):
        if kind == "string":
            scanner.fail(
                "ranges apply to numeric or date properties only",
                ("=", "!="),
                pos=op_pos,
            )
        low_raw, low_pos = _parse_scalar(scanner, terminators=("..", ";"))
        scanner.skip_ws()
        if not scanner.text.startswith("..", scanner.pos):
            scanner.fail("expected '..' between the range bounds", ("..",))
        scanner.pos += 2
        high_raw, high_pos = _parse_scalar(scanner, terminators=(";",))
        negated = op == "not in"
        if kind == "numeric":
            low = _typed_scalar(scanner, "numeric", low_raw, low_pos)
            high = _typed_scalar(scanner, "numeric", high_raw, high_pos)
            if low > high:
                scanner.fail("range low exceeds high", pos=low_pos)
            return prop, NumericRange(low, high, negated)
        start = _typed_scalar(scanner, "date", low_raw, low_pos)
        end = _typed_scalar(scanner, "date", high_raw, high_pos)
        if start > end:
            scanner.fail("range start exceeds end", pos=low_pos)
        return prop, DateRange(start, end, negated)

    scanner.skip_ws()
    if scanner.peek() == "[" and op in ("=", "!="):
        values = _parse_set(scanner, kind)
        return prop, TextAnyOf(values, negated=(op == "!="))

    raw, raw_pos = _parse_scalar(scanner, terminators=(";",))
    if kind == "string":
        if op not in ("=", "!="):
            scanner.fail(
                f"operator {op!r} does not apply to string-facet properties",
                ("=", "!="),
                pos=op_pos,
            )
        return prop, TextAnyOf(frozenset({raw}), negated=(op == "!="))
    if kind == "numeric":
        operand = _typed_scalar(scanner, "numeric", raw, raw_pos)
        return prop, NumericCmp(_CMP_SYMBOLS[op], operand)
    # date facet
    if op in ("<=", ">="):
        scanner.fail(
            "date properties support =, !=, <, > and in/not in",
            ("=", "!=", "<", ">", "in", "not in"),
            pos=op_pos,
        )
    day = _typed_scalar(scanner, "date", raw, raw_pos)
    return prop, DateCmp(_DATE_CMP[op], day, negated=(op == "!="))


def parse_filter_expr(text: str, table: ComparisonTable) -> FilterConfig:
    """Parse an expression into a FilterConfig against the given table.

    Raises FilterSyntaxError (with position and expected tokens),
    UnknownPropertyError, AmbiguousLabelError or DuplicateClauseError.
    """
    facet_kinds = {f.property: f.kind for f in infer_facets(table)}
    scanner = _Scanner(text)
    clauses: dict[str, FilterSpec] = {}
    while True:
        prop, spec = _parse_clause(scanner, table, facet_kinds)
        if prop in clauses:
            raise DuplicateClauseError(f"property {prop!r} appears in two clauses")
        clauses[prop] = spec
        scanner.skip_ws()
        if scanner.at_end():
            return FilterConfig(clauses)
        if scanner.peek() == ";":
            scanner.pos += 1
            continue
        scanner.fail("expected ';' or end of expression", (";",))


# -- serialization -----------------------------------------------------------


def _token(text: str, prop: bool = False) -> str:
    needs_quotes = (
        not text
        or text != text.strip()
        or _SAFE_BARE.search(text) is not None
        or (prop and _PROP_KEYWORD.search(text) is not None)
    )
    if not needs_quotes:
        return text
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def serialize_filter_expr(config: FilterConfig) -> str:
    """Render a config back to expression syntax (clauses sorted by property).

    Raises ValueError for specs the grammar cannot express: a negated date
    ``before``/``after`` has no operator form.
    """
    rendered: list[str] = []
    for prop in sorted(config.clauses):
        spec = config.clauses[prop]
        name = _token(prop, prop=True)
        if isinstance(spec, TextAnyOf):
            body = "|".join(_token(v) for v in sorted(spec.values))
            op = "!=" if spec.negated else "="
            rendered.append(f"{name}{op}[{body}]")
        elif isinstance(spec, NumericCmp):
            sym = {v: k for k, v in _CMP_SYMBOLS.items()}[spec.op]
            rendered.append(f"{name}{sym}{spec.operand}")
        elif isinstance(spec, NumericRange):
            op = "not in" if spec.negated else "in"
            rendered.append(f"{name} {op} {spec.low}..{spec.high}")
        elif isinstance(spec, DateCmp):
            if spec.op == "on":
                sym = "!=" if spec.negated else "="
            elif spec.negated:
                raise ValueError(
                    f"negated date {spec.op!r} has no expression form"
                )
            else:
                sym = {"before": "<", "after": ">"}[spec.op]
            rendered.append(f"{name}{sym}{spec.date.isoformat()}")
        elif isinstance(spec, DateRange):
            op = "not in" if spec.negated else "in"
            rendered.append(
                f"{name} {op} {spec.start.isoformat()}..{spec.end.isoformat()}"
            )
        else:
            raise TypeError(f"not a FilterSpec: {spec!r}")
    return "; ".join(rendered)
