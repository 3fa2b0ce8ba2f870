"""Loading typed statements from a dump and querying them by pattern.

Run from the repository root:  python3 demos/01_graph_store.py
"""

from facetkg import GraphStore
from facetkg.model import TextValue

# The dump format is one record per line, tab-separated:
#   S  subject  predicate  kind  lexical     (a statement; kind: text/number/date/link)
#   T  predicate  datatype  label            (datatype template for a predicate)
#   R  id  label                             (display label for a resource)
DUMP = """\
# Three COVID-19 diagnostics contributions.
R\tC1\tDetection of SARS-CoV-2 by RT-PCR
R\tC2\tRapid molecular assay evaluation
R\tC3\tSerological antibody survey
T\tmethod\ttext\tMethod
T\tpatients\tnumber\tPatients
T\tstudy_date\tdate\tStudy date
S\tC1\tmethod\ttext\tPCR
S\tC1\tpatients\tnumber\t100
S\tC1\tstudy_date\tdate\t2020-03-01
S\tC2\tmethod\ttext\tPCR
S\tC2\tpatients\tnumber\t250
S\tC2\tstudy_date\tdate\t2020-05-20
S\tC3\tmethod\ttext\tAntibody test
S\tC3\tstudy_date\tdate\t2020-04-10
S\tC3\tstudy_date\tdate\t2020-04-24
S\tC3\tbroken line that will be rejected
"""

store = GraphStore()
report = store.ingest_dump(DUMP.encode("utf-8"))

print("== ingest report ==")
print(f"statements added: {report.statements_added}")
print(f"templates added:  {report.templates_added}")
for lineno, reason in report.lines_rejected:
    print(f"rejected line {lineno}: {reason}   (ingest is tolerant, per line)")

print()
print("== everything we know about C3 ==")
for st in store.match_statements(subject="C3"):
    print(f"  {st.subject} --{st.predicate}--> {st.value.canonical_text}")

print()
print("== who used PCR? (predicate+object bound, subject free) ==")
for st in store.match_statements(predicate="method", value=TextValue("PCR")):
    print(f"  {st.subject}: {store.label(st.subject)}")

print()
print("== set semantics ==")
from facetkg import Statement  # noqa: E402

dup = Statement("C1", "method", TextValue("PCR"))
print(f"inserting an existing triple returns {store.add_statement(dup)}")
print(f"statement count is still {store.statement_count}")
