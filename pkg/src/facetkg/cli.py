"""Command line interface: ingest, compare, serve.

Exit codes: 0 ok, 1 data error, 2 usage error.
"""

from __future__ import annotations

import csv
import sys
from pathlib import Path

import click

from .api import ServeConfig, compare_payload, serve
from .canonical import canonical_json_bytes
from .comparison import ComparisonTable, build_comparison
from .errors import FacetSearchError
from .filters import FilterConfig, apply_filters
from .filterexpr import parse_filter_expr
from .store import GraphStore, IngestReport


@click.group()
@click.version_option(package_name="facetkg")
def main() -> None:
    """Faceted search over knowledge-graph comparisons."""


def _load_store(path: Path) -> tuple[GraphStore, IngestReport]:
    store = GraphStore()
    try:
        report = store.ingest_path(path)
    except OSError as exc:
        raise click.ClickException(f"cannot read dump: {exc}")
    return store, report


@main.command()
@click.argument("dump", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--strict", is_flag=True, help="Exit with status 1 if any line is rejected.")
def ingest(dump: Path, strict: bool) -> None:
    """Parse and validate a graph dump, reporting what would be loaded."""
    _, report = _load_store(dump)
    click.echo(f"statements added: {report.statements_added}")
    click.echo(f"templates added:  {report.templates_added}")
    click.echo(f"lines rejected:   {len(report.lines_rejected)}")
    for lineno, reason in report.lines_rejected:
        click.echo(f"  line {lineno}: {reason}", err=True)
    if strict and report.lines_rejected:
        raise click.exceptions.Exit(1)


@main.command()
@click.option("--data", "data_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Graph dump to load.")
@click.option("--contributions", "ids_csv", required=True,
              help="Comma-separated contribution ids.")
@click.option("--filter", "filter_expr", default=None,
              help="Filter expression, e.g. 'method=[PCR];patients>100'.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "table"]),
              default="table", show_default=True)
def compare(data_path: Path, ids_csv: str, filter_expr: str | None, fmt: str) -> None:
    """Build (and optionally filter) a comparison of contributions."""
    store, _ = _load_store(data_path)
    ids = [part.strip() for part in ids_csv.split(",") if part.strip()]
    try:
        table = build_comparison(store, ids)
        config = (
            parse_filter_expr(filter_expr, table) if filter_expr else FilterConfig.empty()
        )
        if fmt == "json":
            payload = compare_payload(store, ids, config)
            click.echo(canonical_json_bytes(payload).decode("utf-8"))
            return
        filtered = apply_filters(table, config)
    except FacetSearchError as exc:
        raise click.ClickException(str(exc))
    if fmt == "csv":
        _emit_csv(filtered)
    else:
        _emit_table(filtered)


def _grid(table: ComparisonTable) -> list[list[str]]:
    header = ["property"] + [c.label for c in table.contributions]
    rows = [header]
    for prop in table.properties:
        cells = [
            " | ".join(v.candidate_text for v in table.cell(prop.id, c.id))
            for c in table.contributions
        ]
        rows.append([prop.label] + cells)
    return rows


def _emit_csv(table: ComparisonTable) -> None:
    writer = csv.writer(sys.stdout)
    writer.writerows(_grid(table))


def _emit_table(table: ComparisonTable) -> None:
    rows = _grid(table)
    if len(rows) == 1 and not table.contributions:
        click.echo("(no contributions match)")
        return
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    for idx, row in enumerate(rows):
        click.echo("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
        if idx == 0:
            click.echo("  ".join("-" * width for width in widths))


@main.command("serve")
@click.option("--port", default=8080, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data", "data_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--storage", "storage_dir", required=True,
              type=click.Path(file_okay=False, path_type=Path))
@click.option("--base-url", default=None,
              help="Public base for permanent URLs [default: http://HOST:PORT]")
@click.option("--strict", is_flag=True,
              help="Refuse to start if the dump has rejected lines.")
@click.option("--ui", "ui_dir", default=None,
              type=click.Path(exists=True, file_okay=False, path_type=Path),
              help="Serve a built web UI from this directory at /.")
def serve_cmd(port: int, host: str, data_path: Path, storage_dir: Path,
              base_url: str | None, strict: bool, ui_dir: Path | None) -> None:
    """Run the HTTP service on top of a dump."""
    config = ServeConfig(
        port=port,
        data_dump_path=str(data_path),
        storage_dir=str(storage_dir),
        base_url=base_url or f"http://{host}:{port}",
        strict=strict,
        host=host,
        ui_dir=str(ui_dir) if ui_dir else None,
    )
    try:
        serve(config)
    except FacetSearchError as exc:
        raise click.ClickException(str(exc))


if __name__ == "__main__":
    main()
