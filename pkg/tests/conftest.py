from pathlib import Path

import pytest

from facetkg import GraphStore, build_comparison

DATA_DIR = Path(__file__).parent / "data"
FIXTURE_DUMP = DATA_DIR / "covid19_contributions.tsv"
FIXTURE_IDS = ["C1", "C2", "C3"]


@pytest.fixture()
def fixture_store() -> GraphStore:
    store = GraphStore()
    report = store.ingest_path(FIXTURE_DUMP)
    assert report.ok, report.lines_rejected
    return store


@pytest.fixture()
def fixture_table(fixture_store):
    return build_comparison(fixture_store, FIXTURE_IDS)
