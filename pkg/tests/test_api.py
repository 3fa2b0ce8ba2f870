import json
import threading
import time

import httpx
import pytest
from fastapi.testclient import TestClient

from facetkg import GraphStore, SnapshotStore, snapshot_id
from facetkg.api import ServeConfig, build_service, check_port_free, create_app
from facetkg.errors import BindFailureError, IngestFailureError

from .conftest import FIXTURE_DUMP

BASE = "http://search.example"


@pytest.fixture()
def client(fixture_store, tmp_path):
    app = create_app(fixture_store, SnapshotStore(tmp_path), BASE)
    with TestClient(app, raise_server_exceptions=False) as client:
        yield client


def error_code(response):
    body = response.json()
    assert set(body) == {"error"}
    assert set(body["error"]) == {"code", "message"}
    return body["error"]["code"]


class TestHealth:
    def test_reports_statement_count(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok", "statements": 9}

    def test_media_type(self, client):
        assert client.get("/health").headers["content-type"] == "application/json"


class TestCompare:
    def test_unfiltered_fixture(self, client):
        response = client.post("/compare", json={"contributions": ["C1", "C2", "C3"]})
        assert response.status_code == 200
        body = response.json()
        assert [c["id"] for c in body["table"]["contributions"]] == ["C1", "C2", "C3"]
        assert len(body["facets"]) == 3
        assert body["active_filters"] == {}

    def test_filtered_fixture_with_annotated_counts(self, client):
        payload = {
            "contributions": ["C1", "C2", "C3"],
            "filter": {
                "method": {"kind": "text-any-of", "values": ["PCR"], "negated": False}
            },
        }
        body = client.post("/compare", json=payload).json()
        assert [c["id"] for c in body["table"]["contributions"]] == ["C1", "C2"]
        method = [f for f in body["facets"] if f["property"] == "method"][0]
        assert method["candidates"] == [
            {"value": "PCR", "count": 2, "filtered_count": 2},
            {"value": "Antibody test", "count": 1, "filtered_count": 0},
        ]
        assert body["active_filters"]["method"]["values"] == ["PCR"]

    def test_filter_expression_variant(self, client):
        payload = {"contributions": ["C1", "C2", "C3"], "filter_expr": "patients>100"}
        body = client.post("/compare", json=payload).json()
        assert [c["id"] for c in body["table"]["contributions"]] == ["C2"]
        assert body["active_filters"]["patients"] == {
            "kind": "numeric-cmp",
            "op": "gt",
            "operand": "100",
        }

    def test_empty_result_is_an_empty_table(self, client):
        payload = {"contributions": ["C1"], "filter_expr": "method=[Nope]"}
        body = client.post("/compare", json=payload).json()
        assert body["table"] == {"contributions": [], "properties": [], "cells": []}

    def test_repeated_calls_are_byte_identical(self, client):
        payload = {"contributions": ["C1", "C2", "C3"], "filter_expr": "method=[PCR]"}
        first = client.post("/compare", json=payload)
        second = client.post("/compare", json=payload)
        assert first.content == second.content

    def test_unknown_contribution_404(self, client):
        response = client.post("/compare", json={"contributions": ["C9"]})
        assert response.status_code == 404
        assert error_code(response) == "unknown-contribution"

    def test_unknown_filter_property_422(self, client):
        payload = {
            "contributions": ["C1"],
            "filter": {"funding": {"kind": "numeric-cmp", "op": "gt", "operand": "1"}},
        }
        response = client.post("/compare", json=payload)
        assert response.status_code == 422
        assert error_code(response) == "unknown-property"

    def test_syntax_error_envelope(self, client):
        payload = {"contributions": ["C1"], "filter_expr": "patients>"}
        response = client.post("/compare", json=payload)
        assert response.status_code == 400
        assert error_code(response) == "syntax-error"

    @pytest.mark.parametrize(
        "payload",
        [
            {},
            {"contributions": []},
            {"contributions": "C1"},
            {"contributions": [1]},
            {"contributions": ["C1"], "filter": "x"},
            {"contributions": ["C1"], "filter_expr": 5},
            {
                "contributions": ["C1"],
                "filter": {"method": {"kind": "text-any-of", "values": ["x"]}},
                "filter_expr": "method=[x]",
            },
        ],
    )
    def test_invalid_requests_400(self, client, payload):
        response = client.post("/compare", json=payload)
        assert response.status_code == 400
        assert error_code(response) == "invalid-request"

    def test_non_json_body_400(self, client):
        response = client.post(
            "/compare", content=b"not json", headers={"content-type": "application/json"}
        )
        assert response.status_code == 400
        assert error_code(response) == "invalid-request"

    def test_duplicate_contributions_400(self, client):
        response = client.post("/compare", json={"contributions": ["C1", "C1"]})
        assert response.status_code == 400
        assert error_code(response) == "invalid-request"


class TestAutocomplete:
    def test_prefix_hit(self, client):
        payload = {"contributions": ["C1", "C2", "C3"], "property": "method", "prefix": "p"}
        response = client.post("/autocomplete", json=payload)
        assert response.status_code == 200
        assert response.json() == ["PCR"]

    def test_no_match_is_empty_list(self, client):
        payload = {"contributions": ["C1", "C2", "C3"], "property": "method", "prefix": "zz"}
        assert client.post("/autocomplete", json=payload).json() == []

    def test_resolves_labels_too(self, client):
        payload = {"contributions": ["C1", "C2", "C3"], "property": "Method", "prefix": ""}
        assert client.post("/autocomplete", json=payload).json() == ["PCR", "Antibody test"]

    def test_non_string_facet_422(self, client):
        payload = {"contributions": ["C1", "C2", "C3"], "property": "patients", "prefix": "1"}
        response = client.post("/autocomplete", json=payload)
        assert response.status_code == 422
        assert error_code(response) == "invalid-request"

    def test_unknown_property_404(self, client):
        payload = {"contributions": ["C1"], "property": "funding", "prefix": ""}
        response = client.post("/autocomplete", json=payload)
        assert response.status_code == 404
        assert error_code(response) == "unknown-property"

    @pytest.mark.parametrize("limit", [0, -1, 101, "10", True])
    def test_limit_bounds(self, client, limit):
        payload = {"contributions": ["C1"], "property": "method", "limit": limit}
        response = client.post("/autocomplete", json=payload)
        assert response.status_code == 400
        assert error_code(response) == "invalid-request"

    def test_default_limit_is_ten(self, client):
        payload = {"contributions": ["C1", "C2", "C3"], "property": "method"}
        assert client.post("/autocomplete", json=payload).json() == [
            "PCR",
            "Antibody test",
        ]


class TestSaveAndLoad:
    PAYLOAD = {
        "contributions": ["C1", "C2", "C3"],
        "filter": {"method": {"kind": "text-any-of", "values": ["PCR"], "negated": False}},
    }

    def test_save_returns_id_and_url(self, client):
        response = client.post("/saved", json=self.PAYLOAD)
        assert response.status_code == 200
        body = response.json()
        assert len(body["id"]) == 16
        assert body["url"] == f"{BASE}/saved/{body['id']}"

    def test_save_is_idempotent(self, client):
        first = client.post("/saved", json=self.PAYLOAD).json()
        second = client.post("/saved", json=self.PAYLOAD).json()
        assert first == second
        assert len(client.get("/saved").json()) == 1

    def test_unknown_filter_property_422(self, client):
        payload = {
            "contributions": ["C1"],
            "filter": {"funding": {"kind": "numeric-cmp", "op": "gt", "operand": "1"}},
        }
        assert client.post("/saved", json=payload).status_code == 422

    def test_get_saved_round_trip(self, client):
        saved = client.post("/saved", json=self.PAYLOAD).json()
        body = client.get(f"/saved/{saved['id']}").json()
        assert body["id"] == saved["id"]
        assert body["source"] == ["C1", "C2", "C3"]
        assert body["filter"]["method"]["values"] == ["PCR"]
        assert [c["id"] for c in body["table"]["contributions"]] == ["C1", "C2"]
        assert "created_at" in body

    def test_get_saved_not_found(self, client):
        response = client.get("/saved/0000000000000000")
        assert response.status_code == 404
        assert error_code(response) == "not-found"

    def test_get_saved_malformed_id(self, client):
        response = client.get("/saved/nothex")
        assert response.status_code == 400
        assert error_code(response) == "malformed-id"

    def test_list_saved_entries(self, client):
        client.post("/saved", json=self.PAYLOAD)
        listed = client.get("/saved").json()
        assert len(listed) == 1
        assert set(listed[0]) == {"id", "created_at"}

    def test_snapshots_survive_graph_mutation(self, fixture_store, tmp_path):
        storage = SnapshotStore(tmp_path)
        app = create_app(fixture_store, storage, BASE)
        with TestClient(app) as client:
            saved = client.post("/saved", json=self.PAYLOAD).json()
            before = client.get(f"/saved/{saved['id']}").content

        mutated = GraphStore()
        mutated.ingest_dump(b"S\tC1\tmethod\ttext\tDowsing\n")
        app2 = create_app(mutated, SnapshotStore(tmp_path), BASE)
        with TestClient(app2) as client:
            after = client.get(f"/saved/{saved['id']}").content
        assert before == after


class TestEnvelopeEverywhere:
    def test_unknown_route_404_envelope(self, client):
        response = client.get("/nope")
        assert response.status_code == 404
        assert error_code(response) == "not-found"

    def test_wrong_method_405_envelope(self, client):
        response = client.get("/compare")
        assert response.status_code == 405
        assert error_code(response) == "invalid-request"

    def test_integrity_failure_500_envelope(self, client, tmp_path, fixture_store):
        saved = client.post("/saved", json=TestSaveAndLoad.PAYLOAD).json()
        # client fixture stores under tmp_path; corrupt the snapshot file
        path = tmp_path / f"{saved['id']}.snapshot"
        data = bytearray(path.read_bytes())
        data[0] ^= 0x01
        path.write_bytes(bytes(data))
        response = client.get(f"/saved/{saved['id']}")
        assert response.status_code == 500
        assert error_code(response) == "internal"


class TestService:
    def test_build_service_loads_dump(self, tmp_path):
        config = ServeConfig(
            port=0,
            data_dump_path=str(FIXTURE_DUMP),
            storage_dir=str(tmp_path),
            base_url=BASE,
        )
        app = build_service(config)
        with TestClient(app) as client:
            assert client.get("/health").json()["statements"] == 9

    def test_strict_startup_rejects_bad_dump(self, tmp_path):
        bad = tmp_path / "bad.tsv"
        bad.write_bytes(b"S\tC1\tmethod\ttext\tPCR\nQ\tjunk\n")
        config = ServeConfig(
            port=0,
            data_dump_path=str(bad),
            storage_dir=str(tmp_path / "s"),
            base_url=BASE,
            strict=True,
        )
        with pytest.raises(IngestFailureError):
            build_service(config)

    def test_lenient_startup_logs_and_continues(self, tmp_path):
        bad = tmp_path / "bad.tsv"
        bad.write_bytes(b"S\tC1\tmethod\ttext\tPCR\nQ\tjunk\n")
        config = ServeConfig(
            port=0,
            data_dump_path=str(bad),
            storage_dir=str(tmp_path / "s"),
            base_url=BASE,
        )
        app = build_service(config)
        with TestClient(app) as client:
            assert client.get("/health").json()["statements"] == 1

    def test_unreadable_dump_is_ingest_failure(self, tmp_path):
        config = ServeConfig(
            port=0,
            data_dump_path=str(tmp_path / "missing.tsv"),
            storage_dir=str(tmp_path),
            base_url=BASE,
        )
        with pytest.raises(IngestFailureError):
            build_service(config)

    def test_occupied_port_is_bind_failure(self):
        import socket

        with socket.socket() as holder:
            holder.bind(("127.0.0.1", 0))
            port = holder.getsockname()[1]
            with pytest.raises(BindFailureError):
                check_port_free("127.0.0.1", port)

    def test_real_http_round_trip(self, tmp_path):
        import uvicorn

        config = ServeConfig(
            port=0,
            data_dump_path=str(FIXTURE_DUMP),
            storage_dir=str(tmp_path),
            base_url=BASE,
        )
        app = build_service(config)
        server = uvicorn.Server(
            uvicorn.Config(app, host="127.0.0.1", port=0, log_level="warning")
        )
        thread = threading.Thread(target=server.run, daemon=True)
        thread.start()
        try:
            deadline = time.time() + 10
            while not server.started:
                assert time.time() < deadline, "server did not start"
                time.sleep(0.02)
            port = server.servers[0].sockets[0].getsockname()[1]
            body = httpx.get(f"http://127.0.0.1:{port}/health").json()
            assert body == {"status": "ok", "statements": 9}
        finally:
            server.should_exit = True
            thread.join(timeout=10)


class TestContentAddressing:
    def test_id_matches_independent_sha256(self, client):
        saved = client.post("/saved", json=TestSaveAndLoad.PAYLOAD).json()
        body = client.get(f"/saved/{saved['id']}").json()
        tree = {"source": body["source"], "filter": body["filter"], "table": body["table"]}
        data = json.dumps(tree, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
        assert snapshot_id(data.encode("utf-8")) == saved["id"]
