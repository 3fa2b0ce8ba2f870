"""Canonical JSON: sorted keys, no insignificant whitespace, UTF-8 bytes.

Snapshot ids are computed over these bytes, so any tree serialized here must
contain only strings, ints, bools, None, lists and dicts (never floats).
"""

from __future__ import annotations

import json
from typing import Any


def canonical_json_bytes(tree: Any) -> bytes:
    return json.dumps(
        tree, sort_keys=True, separators=(",", ":"), ensure_ascii=False
    ).encode("utf-8")


def from_canonical_json(data: bytes) -> Any:
    return json.loads(data.decode("utf-8"))
