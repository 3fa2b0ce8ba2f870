import json
import socket

from click.testing import CliRunner

from facetkg.cli import main

from .conftest import FIXTURE_DUMP

FIXTURE = str(FIXTURE_DUMP)


def run(*args):
    return CliRunner().invoke(main, list(args))


class TestIngest:
    def test_reports_counts(self):
        result = run("ingest", FIXTURE)
        assert result.exit_code == 0
        assert "statements added: 9" in result.output
        assert "templates added:  3" in result.output
        assert "lines rejected:   0" in result.output

    def test_rejected_lines_listed(self, tmp_path):
        dump = tmp_path / "bad.tsv"
        dump.write_bytes(b"S\tC1\tmethod\ttext\tPCR\nQ\tjunk\n")
        result = run("ingest", str(dump))
        assert result.exit_code == 0
        assert "line 2: unknown-record-type" in result.output

    def test_strict_exits_nonzero_on_rejects(self, tmp_path):
        dump = tmp_path / "bad.tsv"
        dump.write_bytes(b"Q\tjunk\n")
        result = run("ingest", str(dump), "--strict")
        assert result.exit_code == 1

    def test_missing_file_is_usage_error(self):
        result = run("ingest", "/no/such/file.tsv")
        assert result.exit_code == 2


class TestCompare:
    def test_table_output(self):
        result = run(
            "compare", "--data", FIXTURE, "--contributions", "C1,C2,C3"
        )
        assert result.exit_code == 0
        assert "Method" in result.output
        assert "Antibody test" in result.output

    def test_filter_shrinks_table(self):
        result = run(
            "compare",
            "--data", FIXTURE,
            "--contributions", "C1,C2,C3",
            "--filter", "method=[PCR];patients>100",
            "--format", "csv",
        )
        assert result.exit_code == 0
        lines = [line for line in result.output.splitlines() if line.strip()]
        header = lines[0]
        assert header.count(",") == 1  # property column + one surviving contribution
        assert "Rapid molecular assay evaluation" in header

    def test_json_output_matches_service_shape(self):
        result = run(
            "compare",
            "--data", FIXTURE,
            "--contributions", "C1,C2,C3",
            "--filter", "method=[PCR]",
            "--format", "json",
        )
        assert result.exit_code == 0
        body = json.loads(result.output)
        assert set(body) == {"table", "facets", "active_filters"}
        assert [c["id"] for c in body["table"]["contributions"]] == ["C1", "C2"]
        method = [f for f in body["facets"] if f["property"] == "method"][0]
        assert method["candidates"][1]["filtered_count"] == 0

    def test_csv_multivalued_cells_joined(self):
        result = run(
            "compare",
            "--data", FIXTURE,
            "--contributions", "C3",
            "--format", "csv",
        )
        assert "2020-04-10 | 2020-04-24" in result.output

    def test_syntax_error_exits_one_with_position(self):
        result = run(
            "compare",
            "--data", FIXTURE,
            "--contributions", "C1",
            "--filter", "patients>",
        )
        assert result.exit_code == 1
        assert "column" in result.output

    def test_unknown_contribution_exits_one(self):
        result = run("compare", "--data", FIXTURE, "--contributions", "C9")
        assert result.exit_code == 1

    def test_missing_required_option_is_usage_error(self):
        result = run("compare", "--data", FIXTURE)
        assert result.exit_code == 2

    def test_empty_filter_result_message(self):
        result = run(
            "compare",
            "--data", FIXTURE,
            "--contributions", "C1",
            "--filter", "method=[Nope]",
        )
        assert result.exit_code == 0
        assert "no contributions match" in result.output


class TestServe:
    def test_occupied_port_exits_one(self, tmp_path):
        with socket.socket() as holder:
            holder.bind(("127.0.0.1", 0))
            port = holder.getsockname()[1]
            result = run(
                "serve",
                "--port", str(port),
                "--data", FIXTURE,
                "--storage", str(tmp_path),
            )
        assert result.exit_code == 1
        assert "bind" in result.output.lower()

    def test_strict_bad_dump_exits_one(self, tmp_path):
        dump = tmp_path / "bad.tsv"
        dump.write_bytes(b"Q\tjunk\n")
        result = run(
            "serve",
            "--data", str(dump),
            "--storage", str(tmp_path / "s"),
            "--strict",
        )
        assert result.exit_code == 1
        assert "rejected" in result.output
