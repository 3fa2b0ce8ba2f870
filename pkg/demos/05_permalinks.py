"""Saving a filtered comparison under a permanent content-addressed id.

The id is a truncated SHA-256 over the canonical snapshot bytes, so the
same filtered view always gets the same id, on any machine, forever.

Run from the repository root:  python3 demos/05_permalinks.py
"""

import tempfile
from pathlib import Path

from facetkg import (
    GraphStore,
    IntegrityError,
    SnapshotStore,
    apply_filters,
    build_comparison,
    parse_filter_expr,
)

store = GraphStore()
store.ingest_path(Path(__file__).parent.parent / "tests/data/covid19_contributions.tsv")
table = build_comparison(store, ["C1", "C2", "C3"])
config = parse_filter_expr("method=[PCR]", table)
filtered = apply_filters(table, config)

workdir = Path(tempfile.mkdtemp(prefix="facetkg-demo-"))
snapshots = SnapshotStore(workdir / "storage")

saved = snapshots.save(filtered, config, ["C1", "C2", "C3"])
print(f"saved under id {saved.id}  ({len(saved.snapshot)} canonical bytes)")
print(f"a service would share it as <base>/saved/{saved.id}")

again = snapshots.save(filtered, config, ["C1", "C2", "C3"])
print(f"saving the identical view again: same id ({again.id}), one stored object")

loaded = snapshots.load(saved.id)
assert loaded.table() == filtered and loaded.config() == config
print("load() returned the exact table and config that were saved")

print()
print("every load re-verifies the hash; flip one byte and loading fails:")
path = snapshots.directory / f"{saved.id}.snapshot"
original = path.read_bytes()
corrupted = bytearray(original)
corrupted[10] ^= 0x01
path.write_bytes(bytes(corrupted))
try:
    snapshots.load(saved.id)
except IntegrityError as exc:
    print(f"  IntegrityError: {exc}")
path.write_bytes(original)

print()
print("stored objects:")
for sid, created in snapshots.list_saved():
    print(f"  {sid}  created {created.isoformat()}")
