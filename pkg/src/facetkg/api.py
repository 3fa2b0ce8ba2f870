"""HTTP service exposing comparisons, facets, filtering and snapshots.

Routes (all bodies canonical JSON, UTF-8):

    GET  /health            -> {"status": "ok", "statements": N}
    POST /compare           -> {"table", "facets", "active_filters"}
    POST /autocomplete      -> ["suggestion", ...]
    POST /saved             -> {"id", "url"}
    GET  /saved/{id}        -> {"id", "created_at", "source", "filter", "table"}
    GET  /saved             -> [{"id", "created_at"}, ...]

Failures use one envelope: {"error": {"code": ..., "message": ...}} with a
code from {invalid-request, unknown-contribution, unknown-property,
syntax-error, not-found, malformed-id, conflict, internal}.

The graph store is read-only once the service is up, so handlers are free
to run concurrently; snapshot writes rely on the snapshot store's atomic
rename contract.
"""

from __future__ import annotations

import logging
import socket
from dataclasses import dataclass
from typing import Any, Optional

from fastapi import FastAPI, Request, Response
from starlette.exceptions import HTTPException as StarletteHTTPException

from .canonical import canonical_json_bytes
from .comparison import ComparisonTable, build_comparison, resolve_property, table_to_tree
from .errors import (
    AmbiguousLabelError,
    BindFailureError,
    DuplicateClauseError,
    DuplicateContributionError,
    FacetSearchError,
    FilterSyntaxError,
    HashCollisionError,
    IngestFailureError,
    IntegrityError,
    InvalidRequestError,
    MalformedIdError,
    NotFoundError,
    StorageError,
    UnknownContributionError,
    UnknownPropertyError,
    WrongFacetKindError,
)
from .facets import autocomplete, facets_to_tree, infer_facets
from .filters import FilterConfig, apply_filters, config_from_tree, config_to_tree
from .filterexpr import parse_filter_expr
from .snapshots import SnapshotStore
from .store import GraphStore

logger = logging.getLogger(__name__)

# Exception class -> (http status, envelope code). The envelope code set is
# closed; module-level codes outside it surface as the closest member.
_ERROR_MAP: list[tuple[type, int, str]] = [
    (InvalidRequestError, 400, "invalid-request"),
    (MalformedIdError, 400, "malformed-id"),
    (FilterSyntaxError, 400, "syntax-error"),
    (AmbiguousLabelError, 400, "invalid-request"),
    (DuplicateClauseError, 400, "invalid-request"),
    (DuplicateContributionError, 400, "invalid-request"),
    (UnknownContributionError, 404, "unknown-contribution"),
    (NotFoundError, 404, "not-found"),
    (UnknownPropertyError, 422, "unknown-property"),
    (WrongFacetKindError, 422, "invalid-request"),
    (HashCollisionError, 409, "conflict"),
    (IntegrityError, 500, "internal"),
    (StorageError, 500, "internal"),
]


class ApiFailure(Exception):
    """An error with its HTTP mapping pinned by the handler that raised it."""

    def __init__(self, http_status: int, code: str, message: str):
        super().__init__(message)
        self.http_status = http_status
        self.code = code


@dataclass(frozen=True)
class ApiError:
    code: str
    message: str
    http_status: int

    def envelope(self) -> dict:
        return {"error": {"code": self.code, "message": self.message}}


def _classify(exc: Exception) -> ApiError:
    if isinstance(exc, ApiFailure):
        return ApiError(exc.code, str(exc), exc.http_status)
    for klass, status, code in _ERROR_MAP:
        if isinstance(exc, klass):
            return ApiError(code, str(exc), status)
    return ApiError("internal", "internal server error", 500)


def _json_response(tree: Any, status: int = 200) -> Response:
    return Response(
        content=canonical_json_bytes(tree),
        status_code=status,
        media_type="application/json",
    )


async def _json_object(request: Request) -> dict:
    try:
        payload = await request.json()
    except Exception as exc:
        raise InvalidRequestError("request body must be valid JSON") from exc
    if not isinstance(payload, dict):
        raise InvalidRequestError("request body must be a JSON object")
    return payload


def _contribution_ids(payload: dict) -> list[str]:
    ids = payload.get("contributions")
    if (
        not isinstance(ids, list)
        or not ids
        or not all(isinstance(i, str) and i for i in ids)
    ):
        raise InvalidRequestError(
            "'contributions' must be a non-empty list of contribution ids"
        )
    return ids


def _filter_config(payload: dict, table: ComparisonTable) -> FilterConfig:
    tree = payload.get("filter")
    expr = payload.get("filter_expr")
    if tree is not None and expr is not None:
        raise InvalidRequestError("give either 'filter' or 'filter_expr', not both")
    if tree is not None:
        return config_from_tree(tree)
    if expr is not None:
        if not isinstance(expr, str):
            raise InvalidRequestError("'filter_expr' must be a string")
        return parse_filter_expr(expr, table)
    return FilterConfig.empty()


def compare_payload(
    store: GraphStore, contribution_ids: list[str], config: FilterConfig
) -> dict:
    """The /compare response tree: filtered table, facets of the unfiltered
    comparison annotated with filtered-subset counts, and the config echo."""
    unfiltered = build_comparison(store, contribution_ids)
    filtered = apply_filters(unfiltered, config)
    base_facets = infer_facets(unfiltered)
    subset_counts = {
        f.property: {c.value: c.count for c in f.candidates}
        for f in infer_facets(filtered)
    }
    facet_trees = facets_to_tree(base_facets)
    for entry in facet_trees:
        counts = subset_counts.get(entry["property"], {})
        for candidate in entry["candidates"]:
            candidate["filtered_count"] = counts.get(candidate["value"], 0)
    return {
        "table": table_to_tree(filtered),
        "facets": facet_trees,
        "active_filters": config_to_tree(config),
    }


def create_app(store: GraphStore, snapshots: SnapshotStore, base_url: str) -> FastAPI:
    app = FastAPI(openapi_url=None, docs_url=None, redoc_url=None)
    base = base_url.rstrip("/")

    @app.exception_handler(FacetSearchError)
    async def on_domain_error(request: Request, exc: FacetSearchError) -> Response:
        return _error_response(exc)

    @app.exception_handler(ApiFailure)
    async def on_api_failure(request: Request, exc: ApiFailure) -> Response:
        return _error_response(exc)

    @app.exception_handler(StarletteHTTPException)
    async def on_http_error(request: Request, exc: StarletteHTTPException) -> Response:
        code = "not-found" if exc.status_code == 404 else "invalid-request"
        err = ApiError(code, str(exc.detail), exc.status_code)
        return _json_response(err.envelope(), err.http_status)

    @app.exception_handler(Exception)
    async def on_unexpected(request: Request, exc: Exception) -> Response:
        logger.exception("unhandled error serving %s", request.url.path)
        return _error_response(exc)

    def _error_response(exc: Exception) -> Response:
        err = _classify(exc)
        return _json_response(err.envelope(), err.http_status)

    @app.get("/health")
    async def health() -> Response:
        return _json_response({"status": "ok", "statements": store.statement_count})

    @app.post("/compare")
    async def compare(request: Request) -> Response:
        payload = await _json_object(request)
        ids = _contribution_ids(payload)
        table = build_comparison(store, ids)
        config = _filter_config(payload, table)
        return _json_response(compare_payload(store, ids, config))

    @app.post("/autocomplete")
    async def complete(request: Request) -> Response:
        payload = await _json_object(request)
        ids = _contribution_ids(payload)
        prop = payload.get("property")
        if not isinstance(prop, str) or not prop:
            raise InvalidRequestError("'property' must be a property id or label")
        prefix = payload.get("prefix", "")
        if not isinstance(prefix, str):
            raise InvalidRequestError("'prefix' must be a string")
        limit = payload.get("limit", 10)
        if not isinstance(limit, int) or isinstance(limit, bool) or not 1 <= limit <= 100:
            raise InvalidRequestError("'limit' must be an integer between 1 and 100")
        table = build_comparison(store, ids)
        try:
            prop_id = resolve_property(table, prop)
        except UnknownPropertyError as exc:
            raise ApiFailure(404, "unknown-property", str(exc)) from exc
        facet = next(f for f in infer_facets(table) if f.property == prop_id)
        return _json_response(autocomplete(facet, prefix, limit))

    @app.post("/saved")
    async def save(request: Request) -> Response:
        payload = await _json_object(request)
        ids = _contribution_ids(payload)
        table = build_comparison(store, ids)
        config = _filter_config(payload, table)
        # Never trust a client-posted table: recompute the filtered view here.
        filtered = apply_filters(table, config)
        saved = snapshots.save(filtered, config, ids)
        return _json_response({"id": saved.id, "url": f"{base}/saved/{saved.id}"})

    @app.get("/saved/{sid}")
    async def get_saved(sid: str) -> Response:
        saved = snapshots.load(sid)
        tree = saved.tree()
        return _json_response(
            {
                "id": saved.id,
                "created_at": saved.created_at.isoformat(),
                "source": tree["source"],
                "filter": tree["filter"],
                "table": tree["table"],
            }
        )

    @app.get("/saved")
    async def list_saved() -> Response:
        entries = snapshots.list_saved()
        return _json_response(
            [{"id": sid, "created_at": stamp.isoformat()} for sid, stamp in entries]
        )

    return app


@dataclass
class ServeConfig:
    port: int
    data_dump_path: str
    storage_dir: str
    base_url: str
    strict: bool = False
    host: str = "127.0.0.1"
    ui_dir: Optional[str] = None


def build_service(config: ServeConfig) -> FastAPI:
    """Load the dump, then assemble the app. The store is fully loaded
    before the service ever accepts a request."""
    store = GraphStore()
    try:
        report = store.ingest_path(config.data_dump_path)
    except OSError as exc:
        raise IngestFailureError(f"cannot read dump: {exc}") from exc
    if report.lines_rejected:
        if config.strict:
            raise IngestFailureError(
                f"{len(report.lines_rejected)} rejected line(s): "
                + ", ".join(f"line {n} ({reason})" for n, reason in report.lines_rejected)
            )
        for lineno, reason in report.lines_rejected:
            logger.warning("dump line %d rejected: %s", lineno, reason)
    snapshots = SnapshotStore(config.storage_dir)
    app = create_app(store, snapshots, config.base_url)
    if config.ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.ui_dir, html=True), name="ui")
    return app


def check_port_free(host: str, port: int) -> None:
    """Raise BindFailureError if the port cannot be bound right now."""
    try:
        with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as probe:
            probe.bind((host, port))
    except OSError as exc:
        raise BindFailureError(f"cannot bind {host}:{port}: {exc}") from exc


def serve(config: ServeConfig) -> None:
    """Blocking entry point: build the service and run uvicorn."""
    import uvicorn

    app = build_service(config)
    check_port_free(config.host, config.port)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")


__all__ = [
    "ApiError",
    "ApiFailure",
    "ServeConfig",
    "build_service",
    "check_port_free",
    "compare_payload",
    "create_app",
    "serve",
]
