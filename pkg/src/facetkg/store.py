"""In-memory statement store with templates, labels and dump ingest.

The store holds a set of typed statements (set semantics: duplicate triples
are ignored), one optional datatype template per predicate, and display
labels for resources. Data arrives through ``ingest_dump`` which reads the
line-oriented TSV dump format:

    S<TAB>subject<TAB>predicate<TAB>kind<TAB>lexical
    T<TAB>predicate<TAB>datatype<TAB>label
    R<TAB>id<TAB>label
    # comment

where ``kind``/``datatype`` is one of text, number, date, link; a link
lexical is ``targetId|label``; dates are YYYY-MM-DD. Fields cannot contain
tabs. Malformed lines are reported per line, never fatal.

Concurrency: one writer (ingest/register) at a time, guarded by a lock;
after loading completes the store is safe to share across reader threads.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable, Optional, Union

from .errors import InvalidIdError, TemplateConflictError
from .model import (
    DATATYPES,
    PropertyTemplate,
    Statement,
    Value,
    check_resource_id,
    value_from_lexical,
    value_sort_key,
)


@dataclass
class IngestReport:
    """Outcome of one dump ingest. ``lines_rejected`` holds (line number, reason)."""

    statements_added: int = 0
    templates_added: int = 0
    lines_rejected: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.lines_rejected


def _statement_sort_key(st: Statement) -> tuple[str, str, str, str]:
    return (st.subject, st.predicate, *value_sort_key(st.value))


class GraphStore:
    """Typed statements + templates + labels, with pattern matching."""

    def __init__(self) -> None:
        self._statements: set[Statement] = set()
        self._by_subject: dict[str, set[Statement]] = {}
        self._by_predicate: dict[str, set[Statement]] = {}
        self._templates: dict[str, PropertyTemplate] = {}
        self._labels: dict[str, str] = {}
        self._write_lock = threading.Lock()

    # -- statements ---------------------------------------------------

    @property
    def statement_count(self) -> int:
        return len(self._statements)

    def add_statement(self, stmt: Statement) -> bool:
        """Insert a statement. Returns False (store unchanged) on duplicates."""
        if not isinstance(stmt, Statement):
            raise TypeError("add_statement wants a Statement")
        with self._write_lock:
            return self._add_locked(stmt)

    def _add_locked(self, stmt: Statement) -> bool:
        if stmt in self._statements:
            return False
        self._statements.add(stmt)
        self._by_subject.setdefault(stmt.subject, set()).add(stmt)
        self._by_predicate.setdefault(stmt.predicate, set()).add(stmt)
        return True

    def match_statements(
        self,
        subject: Optional[str] = None,
        predicate: Optional[str] = None,
        value: Optional[Value] = None,
    ) -> list[Statement]:
        """All statements matching the bound positions; None matches anything.

        Results are ordered by (subject, predicate, canonical value text).
        """
        if subject is not None:
            pool: Iterable[Statement] = self._by_subject.get(subject, ())
        elif predicate is not None:
            pool = self._by_predicate.get(predicate, ())
        else:
            pool = self._statements
        hits = [
            st
            for st in pool
            if (subject is None or st.subject == subject)
            and (predicate is None or st.predicate == predicate)
            and (value is None or st.value == value)
        ]
        hits.sort(key=_statement_sort_key)
        return hits

    def has_subject(self, subject: str) -> bool:
        return subject in self._by_subject

    # -- templates and labels ------------------------------------------

    def register_template(self, template: PropertyTemplate) -> None:
        """Register a predicate's datatype. Re-registering the same datatype is
        a no-op; a different datatype raises TemplateConflictError."""
        with self._write_lock:
            self._register_locked(template)

    def _register_locked(self, template: PropertyTemplate) -> bool:
        existing = self._templates.get(template.predicate)
        if existing is not None:
            if existing.datatype != template.datatype:
                raise TemplateConflictError(
                    f"predicate {template.predicate!r} already registered as "
                    f"{existing.datatype}, not {template.datatype}"
                )
            return False
        self._templates[template.predicate] = template
        return True

    def template(self, predicate: str) -> Optional[PropertyTemplate]:
        return self._templates.get(predicate)

    def datatypes(self) -> dict[str, str]:
        """Mapping predicate id -> declared datatype, for facet inference."""
        return {p: t.datatype for p, t in self._templates.items()}

    def label(self, resource_id: str) -> str:
        """Display label: explicit R-line label, else template label, else the id."""
        explicit = self._labels.get(resource_id)
        if explicit:
            return explicit
        template = self._templates.get(resource_id)
        if template is not None and template.label:
            return template.label
        return resource_id

    def set_label(self, resource_id: str, label: str) -> None:
        check_resource_id(resource_id)
        with self._write_lock:
            self._labels[resource_id] = label

    # -- ingest ---------------------------------------------------------

    def ingest_dump(self, source: Union[bytes, BinaryIO]) -> IngestReport:
        """Apply a dump stream line by line.

        Every well-formed line is applied; malformed lines end up in
        ``lines_rejected`` with a short reason. Each line is validated fully
        before any of it is applied, so a rejected line leaves no trace.
        IO errors from the stream propagate to the caller.
        """
        data = source if isinstance(source, bytes) else source.read()
        report = IngestReport()
        with self._write_lock:
            for lineno, raw in enumerate(data.split(b"\n"), start=1):
                if not raw.strip():
                    continue
                try:
                    line = raw.decode("utf-8")
                except UnicodeDecodeError:
                    report.lines_rejected.append((lineno, "invalid-utf8"))
                    continue
                if line.endswith("\r"):
                    line = line[:-1]
                if line.startswith("#"):
                    continue
                reason = self._apply_line(line, report)
                if reason is not None:
                    report.lines_rejected.append((lineno, reason))
        return report

    def ingest_path(self, path) -> IngestReport:
        with open(path, "rb") as fh:
            return self.ingest_dump(fh)

    def _apply_line(self, line: str, report: IngestReport) -> Optional[str]:
        """Apply one record; return a rejection reason or None on success."""
        fields = line.split("\t")
        tag = fields[0]
        if tag == "S":
            if len(fields) != 5:
                return "bad-field-count"
            _, subject, predicate, kind, lexical = fields
            if kind not in DATATYPES:
                return "bad-value-kind"
            try:
                value = value_from_lexical(kind, lexical)
                stmt = Statement(subject, predicate, value)
            except InvalidIdError:
                return "invalid-id"
            except ValueError:
                return f"bad-{kind}"
            if self._add_locked(stmt):
                report.statements_added += 1
            return None
        if tag == "T":
            if len(fields) != 4:
                return "bad-field-count"
            _, predicate, datatype, label = fields
            try:
                template = PropertyTemplate(predicate, datatype, label)
            except InvalidIdError:
                return "invalid-id"
            except ValueError:
                return "bad-datatype"
            try:
                if self._register_locked(template):
                    report.templates_added += 1
            except TemplateConflictError:
                return "template-conflict"
            return None
        if tag == "R":
            if len(fields) != 3:
                return "bad-field-count"
            _, resource_id, label = fields
            try:
                check_resource_id(resource_id)
            except InvalidIdError:
                return "invalid-id"
            self._labels[resource_id] = label
            return None
        return "unknown-record-type"
