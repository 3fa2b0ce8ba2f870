"""The HTTP service end to end: compare, autocomplete, save, re-open.

Starts a real uvicorn server on a free port, drives it with httpx, then
shuts it down.

Run from the repository root:  python3 demos/06_http_service.py
"""

import tempfile
import threading
import time
from pathlib import Path

import httpx
import uvicorn

from facetkg.api import ServeConfig, build_service

DATA = Path(__file__).parent.parent / "tests/data/covid19_contributions.tsv"

storage = tempfile.mkdtemp(prefix="facetkg-demo-")
app = build_service(
    ServeConfig(port=0, data_dump_path=str(DATA), storage_dir=storage,
                base_url="http://127.0.0.1")
)
server = uvicorn.Server(uvicorn.Config(app, host="127.0.0.1", port=0, log_level="error"))
thread = threading.Thread(target=server.run, daemon=True)
thread.start()
while not server.started:
    time.sleep(0.02)
port = server.servers[0].sockets[0].getsockname()[1]
base = f"http://127.0.0.1:{port}"
print(f"serving on {base}")

print()
print("GET /health ->", httpx.get(f"{base}/health").json())

print()
print("POST /compare with method=[PCR]:")
body = httpx.post(
    f"{base}/compare",
    json={"contributions": ["C1", "C2", "C3"], "filter_expr": "method=[PCR]"},
).json()
print("  columns:", [c["id"] for c in body["table"]["contributions"]])
method_facet = [f for f in body["facets"] if f["property"] == "method"][0]
for candidate in method_facet["candidates"]:
    print(
        f"  candidate {candidate['value']!r}: {candidate['count']} overall, "
        f"{candidate['filtered_count']} in the filtered subset"
    )

print()
print("POST /autocomplete prefix 'a':")
suggestions = httpx.post(
    f"{base}/autocomplete",
    json={"contributions": ["C1", "C2", "C3"], "property": "method", "prefix": "a"},
).json()
print("  ->", suggestions)

print()
print("POST /saved persists the filtered view:")
saved = httpx.post(
    f"{base}/saved",
    json={"contributions": ["C1", "C2", "C3"], "filter_expr": "method=[PCR]"},
).json()
print("  ->", saved)

print()
print(f"GET /saved/{saved['id']} returns the frozen snapshot:")
snapshot = httpx.get(f"{base}/saved/{saved['id']}").json()
print("  source:", snapshot["source"])
print("  filter:", snapshot["filter"])
print("  columns:", [c["id"] for c in snapshot["table"]["contributions"]])

print()
print("errors always use the same envelope:")
bad = httpx.post(f"{base}/compare", json={"contributions": ["C9"]})
print(f"  {bad.status_code} ->", bad.json())

server.should_exit = True
thread.join(timeout=10)
print()
print("server stopped")
