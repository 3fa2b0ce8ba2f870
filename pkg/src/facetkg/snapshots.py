"""Content-addressed snapshots of filtered comparisons.

A saved comparison is the canonical JSON of (source contribution ids,
filter config, resulting table). Its id is the first 16 hex characters of
the SHA-256 over those bytes, so identical states dedupe and ids survive
reinstalls. Layout: one ``<id>.snapshot`` file per snapshot plus an
append-only ``index.log`` of ``id<TAB>created_at`` lines; timestamps are
metadata only and never influence the id.
"""

from __future__ import annotations

import datetime as dt
import hashlib
import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

from .canonical import canonical_json_bytes, from_canonical_json
from .comparison import ComparisonTable, table_from_tree, table_to_tree
from .errors import (
    HashCollisionError,
    IntegrityError,
    MalformedIdError,
    NotFoundError,
    StorageError,
)
from .filters import FilterConfig, config_from_tree, config_to_tree

_ID_FORM = re.compile(r"^[0-9a-f]{16}$")
_SUFFIX = ".snapshot"


def snapshot_bytes(
    source: Sequence[str], config: FilterConfig, table: ComparisonTable
) -> bytes:
    tree = {
        "source": list(source),
        "filter": config_to_tree(config),
        "table": table_to_tree(table),
    }
    return canonical_json_bytes(tree)


def snapshot_id(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:16]


@dataclass(frozen=True)
class SavedComparison:
    """An immutable snapshot; ``snapshot`` holds the exact bytes that were hashed."""

    id: str
    snapshot: bytes
    created_at: dt.datetime

    def tree(self) -> dict:
        return from_canonical_json(self.snapshot)

    def source(self) -> list[str]:
        return list(self.tree()["source"])

    def config(self) -> FilterConfig:
        return config_from_tree(self.tree()["filter"])

    def table(self) -> ComparisonTable:
        return table_from_tree(self.tree()["table"])


def _utc_now() -> dt.datetime:
    return dt.datetime.now(dt.timezone.utc)


class SnapshotStore:
    """File-backed store under one directory. Writes go through a temp file
    and an atomic rename, so concurrent identical saves converge on one object."""

    def __init__(self, directory, clock: Optional[Callable[[], dt.datetime]] = None):
        self._dir = Path(directory)
        self._clock = clock or _utc_now
        try:
            self._dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise StorageError(f"cannot create storage directory: {exc}") from exc

    @property
    def directory(self) -> Path:
        return self._dir

    def _path(self, sid: str) -> Path:
        return self._dir / f"{sid}{_SUFFIX}"

    def save(
        self, table: ComparisonTable, config: FilterConfig, source: Sequence[str]
    ) -> SavedComparison:
        """Persist a snapshot; saving identical content again returns the
        existing object. Distinct content hashing to the same truncated id
        raises HashCollisionError instead of overwriting."""
        data = snapshot_bytes(source, config, table)
        sid = snapshot_id(data)
        path = self._path(sid)
        try:
            if path.exists():
                existing = path.read_bytes()
                if existing != data:
                    raise HashCollisionError(
                        f"id {sid} already stores different content"
                    )
                created = self._index().get(sid) or self._mtime(path)
                return SavedComparison(sid, data, created)
            created = self._clock()
            tmp = self._dir / f".{sid}.tmp.{os.getpid()}"
            tmp.write_bytes(data)
            os.replace(tmp, path)
            with open(self._dir / "index.log", "a", encoding="utf-8") as fh:
                fh.write(f"{sid}\t{created.isoformat()}\n")
        except OSError as exc:
            raise StorageError(f"cannot write snapshot: {exc}") from exc
        return SavedComparison(sid, data, created)

    def load(self, sid: str) -> SavedComparison:
        """Fetch a snapshot by id, re-verifying its hash on every load."""
        if not isinstance(sid, str) or not _ID_FORM.match(sid):
            raise MalformedIdError(f"not a 16-char lowercase hex id: {sid!r}")
        path = self._path(sid)
        if not path.exists():
            raise NotFoundError(f"no saved comparison {sid}")
        try:
            data = path.read_bytes()
        except OSError as exc:
            raise StorageError(f"cannot read snapshot: {exc}") from exc
        if snapshot_id(data) != sid:
            raise IntegrityError(f"stored bytes of {sid} hash to a different id")
        created = self._index().get(sid) or self._mtime(path)
        return SavedComparison(sid, data, created)

    def list_saved(self) -> list[tuple[str, dt.datetime]]:
        """All stored (id, created_at), ordered by created_at then id."""
        index = self._index()
        entries: list[tuple[str, dt.datetime]] = []
        try:
            for path in self._dir.iterdir():
                name = path.name
                if not name.endswith(_SUFFIX):
                    continue
                sid = name[: -len(_SUFFIX)]
                if not _ID_FORM.match(sid):
                    continue
                entries.append((sid, index.get(sid) or self._mtime(path)))
        except OSError as exc:
            raise StorageError(f"cannot list storage directory: {exc}") from exc
        entries.sort(key=lambda e: (e[1], e[0]))
        return entries

    def _index(self) -> dict[str, dt.datetime]:
        """id -> created_at from index.log; first entry per id wins."""
        index: dict[str, dt.datetime] = {}
        path = self._dir / "index.log"
        if not path.exists():
            return index
        for line in path.read_text(encoding="utf-8").splitlines():
            sid, sep, stamp = line.partition("\t")
            if not sep or sid in index:
                continue
            try:
                index[sid] = dt.datetime.fromisoformat(stamp)
            except ValueError:
                continue
        return index

    def _mtime(self, path: Path) -> dt.datetime:
        return dt.datetime.fromtimestamp(path.stat().st_mtime, tz=dt.timezone.utc)
