"""Building the contributions-by-properties comparison table.

Run from the repository root:  python3 demos/02_comparison_tables.py
"""

from pathlib import Path

from facetkg import GraphStore, build_comparison, project

store = GraphStore()
store.ingest_path(Path(__file__).parent.parent / "tests/data/covid19_contributions.tsv")

table = build_comparison(store, ["C1", "C2", "C3"])


def show(t, title):
    print(f"== {title} ==")
    width = max((len(p.label) for p in t.properties), default=8) + 2
    header = "".rjust(width) + " | ".join(c.id.center(24) for c in t.contributions)
    print(header)
    for prop in t.properties:
        cells = [
            ", ".join(v.candidate_text for v in t.cell(prop.id, c.id)).center(24)
            for c in t.contributions
        ]
        print(prop.label.rjust(width) + " | ".join(cells))
    print()


show(table, "full comparison (rows ordered by coverage, then label)")

# Columns follow the ids you ask for; rows keep their order when projecting.
subset = project(table, ["C3"])
show(subset, "projected to C3 only (the patients row drops: no values left)")

# Tables are immutable values: projecting to everything is a no-op.
assert project(table, ["C1", "C2", "C3"]) == table
print("projection to all contributions returned the identical table")
