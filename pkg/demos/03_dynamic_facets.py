"""Facets are inferred per comparison, not configured up front.

A property's template decides its facet kind; untemplated properties are
sniffed from the values themselves. Counts always describe the current
comparison, so projecting the table re-derives them.

Run from the repository root:  python3 demos/03_dynamic_facets.py
"""

from pathlib import Path

from facetkg import (
    GraphStore,
    Statement,
    autocomplete,
    build_comparison,
    infer_facets,
    project,
)
from facetkg.model import NumberValue, TextValue

store = GraphStore()
store.ingest_path(Path(__file__).parent.parent / "tests/data/covid19_contributions.tsv")
table = build_comparison(store, ["C1", "C2", "C3"])


def describe(facets):
    for f in facets:
        if f.kind == "string":
            pairs = ", ".join(f"{c.value} ({c.count})" for c in f.candidates)
            print(f"  {f.property:<12} string   candidates: {pairs}")
        else:
            lo = f.min.canonical_text if f.min else "-"
            hi = f.max.canonical_text if f.max else "-"
            print(f"  {f.property:<12} {f.kind:<8} range: {lo} .. {hi}")


print("== facets of the full comparison ==")
describe(infer_facets(table))

print()
print("== after projecting away C3, counts shrink with the table ==")
describe(infer_facets(project(table, ["C1", "C2"])))

print()
print("== autocomplete over string candidates ==")
method = infer_facets(table)[0]
for prefix in ("", "p", "anti", "zz"):
    print(f"  {prefix!r:8} -> {autocomplete(method, prefix, 10)}")

print()
print("== untemplated properties sniff their kind from the values ==")
sniff = GraphStore()
sniff.add_statement(Statement("A", "score", NumberValue("12.5")))
sniff.add_statement(Statement("B", "score", NumberValue("7")))
sniff.add_statement(Statement("A", "note", TextValue("12.5")))
sniff.add_statement(Statement("B", "note", TextValue("preliminary")))
describe(infer_facets(build_comparison(sniff, ["A", "B"])))
print("  ('score' has no template but every value is a decimal -> numeric;")
print("   'note' mixes a decimal with prose -> string, both texts become candidates)")
