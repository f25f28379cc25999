"""HTTP facade: upload sessions, filter chains, and all analysis views.

A session pairs an uploaded base log with a filter chain; the current log is
always the chain replayed over the base.  Sessions live in memory and are
evicted after an idle timeout.  Mutations of one session are serialized;
reads work on immutable snapshots, so they never observe a half-applied
chain.  All payloads are serialized deterministically: identical requests
against identical session state return identical bytes.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request, Response, UploadFile, File

from . import conformance as conf
from .core import OcelLog, format_timestamp, general_stats
from .discovery import (
    METRICS,
    ModelThresholds,
    annotate,
    apply_thresholds,
    discover_ocdfg,
    model_document,
)
from .filtering import FilterChain, criterion_from_doc
from .flattening import flatten, lifecycle
from .io import FormatKind, OcelParseError, export_xes, parse_ocel, write_ocel
from .stats import compute_stats

DEFAULT_MAX_UPLOAD = 256 * 1024 * 1024
DEFAULT_TTL_SECONDS = 60 * 60


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class _Snapshot:
    """Immutable view of one chain state with lazily memoized analyses."""

    def __init__(self, base: OcelLog, chain_doc: dict, current: OcelLog):
        self.base = base
        self.chain_doc = chain_doc
        self.current = current
        self._lock = threading.Lock()
        self._model = None
        self._stats_doc = None

    def model(self):
        with self._lock:
            if self._model is None:
                self._model = annotate(self.current, discover_ocdfg(self.current))
            return self._model

    def stats_doc(self) -> dict:
        with self._lock:
            if self._stats_doc is None:
                self._stats_doc = compute_stats(self.current).to_doc()
            return self._stats_doc


@dataclass
class Session:
    id: str
    base: OcelLog
    chain: FilterChain = field(default_factory=FilterChain)
    snapshot: _Snapshot = None  # type: ignore[assignment]
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_used: float = field(default_factory=time.monotonic)

    def refresh(self) -> None:
        self.snapshot = _Snapshot(
            self.base, self.chain.to_doc(), self.chain.replay(self.base)
        )


class SessionStore:
    def __init__(self, ttl_seconds: float = DEFAULT_TTL_SECONDS):
        self.ttl = ttl_seconds
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, base: OcelLog) -> Session:
        session = Session(id=uuid.uuid4().hex, base=base)
        session.refresh()
        with self._lock:
            self._evict()
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            self._evict()
            session = self._sessions.get(session_id)
            if session is None:
                raise ApiError(404, "unknown-session", f"no session {session_id!r}")
            session.last_used = time.monotonic()
            return session

    def _evict(self) -> None:
        deadline = time.monotonic() - self.ttl
        for sid in [s for s, v in self._sessions.items() if v.last_used < deadline]:
            del self._sessions[sid]


def _json_response(doc, status: int = 200) -> Response:
    return Response(
        content=json.dumps(doc, ensure_ascii=False, allow_nan=False),
        status_code=status,
        media_type="application/json",
    )


def _event_doc(log: OcelLog, event) -> dict:
    return {
        "id": event.id,
        "activity": event.activity,
        "timestamp": format_timestamp(event.timestamp),
        "omap": sorted(event.omap),
        "vmap": {
            name: (
                format_timestamp(event.vmap[name].value)
                if event.vmap[name].kind == "timestamp"
                else event.vmap[name].value
            )
            for name in sorted(event.vmap)
        },
    }


def _general_doc(log: OcelLog) -> dict:
    stats = general_stats(log)
    return {
        "num_events": stats.num_events,
        "num_unique_objects": stats.num_unique_objects,
        "num_total_objects": stats.num_total_objects,
    }


def _chain_summary(session: Session) -> dict:
    return {
        "chain": session.snapshot.chain_doc,
        "general": _general_doc(session.snapshot.current),
    }


def _parse_float(raw: str | None, name: str, default: float) -> float:
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise ApiError(400, "bad-request", f"{name} must be a number, got {raw!r}")


def create_app(
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD,
    session_ttl_seconds: float = DEFAULT_TTL_SECONDS,
    static_dir: str | None = None,
) -> FastAPI:
    """Build the API application (optionally serving the web UI assets)."""
    app = FastAPI(title="ocpm", docs_url=None, redoc_url=None, openapi_url=None)
    store = SessionStore(ttl_seconds=session_ttl_seconds)
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> Response:
        return _json_response({"code": exc.code, "message": exc.message}, exc.status)

    @app.post("/api/v1/sessions")
    async def create_session(file: UploadFile | None = File(default=None)) -> Response:
        if file is None:
            raise ApiError(400, "bad-request", "multipart field 'file' is required")
        chunks = []
        size = 0
        while True:
            chunk = await file.read(1024 * 1024)
            if not chunk:
                break
            size += len(chunk)
            if size > max_upload_bytes:
                raise ApiError(
                    413, "too-large", f"upload exceeds {max_upload_bytes} bytes"
                )
            chunks.append(chunk)
        try:
            base = parse_ocel(b"".join(chunks), kind=None, strict=True)
        except OcelParseError as exc:
            raise ApiError(400, "parse-error", str(exc))
        session = store.create(base)
        return _json_response({"session_id": session.id})

    @app.get("/api/v1/sessions/{sid}/general")
    def get_general(sid: str) -> Response:
        session = store.get(sid)
        return _json_response(_general_doc(session.snapshot.current))

    @app.get("/api/v1/sessions/{sid}/stats")
    def get_stats(sid: str) -> Response:
        session = store.get(sid)
        return _json_response(session.snapshot.stats_doc())

    @app.get("/api/v1/sessions/{sid}/filters")
    def get_filters(sid: str) -> Response:
        session = store.get(sid)
        return _json_response(_chain_summary(session))

    @app.post("/api/v1/sessions/{sid}/filters")
    async def push_filter(sid: str, request: Request) -> Response:
        session = store.get(sid)
        try:
            doc = json.loads(await request.body())
            criterion = criterion_from_doc(doc)
        except (json.JSONDecodeError, ValueError) as exc:
            raise ApiError(400, "bad-criterion", str(exc))
        with session.lock:
            session.chain.push(criterion)
            try:
                session.refresh()
            except ValueError as exc:
                session.chain.pop(len(session.chain.steps) - 1)
                raise ApiError(400, "bad-criterion", str(exc))
        return _json_response(_chain_summary(session))

    @app.delete("/api/v1/sessions/{sid}/filters/{index}")
    def pop_filter(sid: str, index: int) -> Response:
        session = store.get(sid)
        with session.lock:
            try:
                session.chain.pop(index)
            except IndexError as exc:
                raise ApiError(400, "bad-step-index", str(exc))
            session.refresh()
        return _json_response(_chain_summary(session))

    @app.get("/api/v1/sessions/{sid}/model")
    def get_model(
        sid: str,
        metric: str = "UO",
        min_node: str | None = None,
        min_edge: str | None = None,
    ) -> Response:
        session = store.get(sid)
        if metric not in METRICS:
            raise ApiError(
                400, "bad-request", f"metric must be one of {'|'.join(METRICS)}"
            )
        thresholds = ModelThresholds(
            min_node=_parse_float(min_node, "min_node", 0.0),
            min_edge=_parse_float(min_edge, "min_edge", 0.0),
            metric=metric,
        )
        full = session.snapshot.model()
        full_doc = model_document(full, metric)
        filtered = apply_thresholds(full, thresholds)
        doc = model_document(
            filtered,
            metric,
            max_node_value=full_doc["max_node_value"],
            max_edge_value=full_doc["max_edge_value"],
        )
        return _json_response(doc)

    @app.get("/api/v1/sessions/{sid}/events")
    def get_events(sid: str, object: str | None = None) -> Response:
        session = store.get(sid)
        current = session.snapshot.current
        if object is None:
            return _json_response(
                {"events": [_event_doc(current, e) for e in current.events]}
            )
        if object not in current.objects:
            raise ApiError(404, "unknown-object", f"no object {object!r}")
        ids = current.events_of_object(object)
        return _json_response(
            {
                "object": object,
                "events": [_event_doc(current, current.event(i)) for i in ids],
            }
        )

    @app.get("/api/v1/sessions/{sid}/objects")
    def get_objects(sid: str, type: str | None = None) -> Response:
        session = store.get(sid)
        current = session.snapshot.current
        if type is not None and type not in current.object_types:
            raise ApiError(404, "unknown-object-type", f"no object type {type!r}")
        rows = []
        for oid in sorted(current.objects):
            obj = current.objects[oid]
            if type is not None and obj.otype != type:
                continue
            life = lifecycle(current, oid)
            rows.append(
                {
                    "id": oid,
                    "type": obj.otype,
                    "ovmap": {
                        name: (
                            format_timestamp(obj.ovmap[name].value)
                            if obj.ovmap[name].kind == "timestamp"
                            else obj.ovmap[name].value
                        )
                        for name in sorted(obj.ovmap)
                    },
                    "lifecycle": list(life.events),
                    "trace": list(life.trace),
                    "duration_seconds": life.duration_seconds,
                }
            )
        return _json_response({"objects": rows})

    @app.get("/api/v1/sessions/{sid}/conformance/count")
    def conformance_count(sid: str, zeta: str | None = None) -> Response:
        session = store.get(sid)
        config = _anomaly_config(zeta)
        report = conf.detect_count_anomalies(session.snapshot.current, config)
        return _json_response(report.to_doc())

    @app.get("/api/v1/sessions/{sid}/conformance/duration")
    def conformance_duration(sid: str, zeta: str | None = None) -> Response:
        session = store.get(sid)
        config = _anomaly_config(zeta)
        report = conf.detect_duration_anomalies(session.snapshot.current, config)
        return _json_response(report.to_doc())

    @app.post("/api/v1/sessions/{sid}/conformance/apply")
    async def conformance_apply(sid: str, request: Request) -> Response:
        session = store.get(sid)
        try:
            doc = json.loads(await request.body())
        except json.JSONDecodeError as exc:
            raise ApiError(400, "bad-request", f"invalid JSON body: {exc}")
        check = doc.get("check")
        if check not in ("count", "duration"):
            raise ApiError(400, "bad-request", "body must set check to count|duration")
        config = _anomaly_config(doc.get("zeta"))
        with session.lock:
            current = session.snapshot.current
            if check == "count":
                report = conf.detect_count_anomalies(current, config)
            else:
                report = conf.detect_duration_anomalies(current, config)
            session.chain.push(conf.violations_to_filter(report))
            session.refresh()
        summary = _chain_summary(session)
        summary["report"] = report.to_doc()
        return _json_response(summary)

    @app.get("/api/v1/sessions/{sid}/download")
    def download(sid: str, format: str = "jsonocel") -> Response:
        session = store.get(sid)
        try:
            kind = FormatKind(format)
        except ValueError:
            raise ApiError(400, "bad-request", "format must be jsonocel|xmlocel")
        payload = write_ocel(session.snapshot.current, kind)
        media = "application/json" if kind is FormatKind.JSON else "application/xml"
        return Response(
            content=payload,
            media_type=media,
            headers={
                "Content-Disposition": f'attachment; filename="filtered.{format}"'
            },
        )

    @app.get("/api/v1/sessions/{sid}/flatten/{otype}")
    def flatten_download(sid: str, otype: str, format: str = "xes") -> Response:
        session = store.get(sid)
        if format != "xes":
            raise ApiError(400, "bad-request", "format must be xes")
        current = session.snapshot.current
        if otype not in current.object_types:
            raise ApiError(404, "unknown-object-type", f"no object type {otype!r}")
        payload = export_xes(flatten(current, otype))
        return Response(
            content=payload,
            media_type="application/xml",
            headers={
                "Content-Disposition": f'attachment; filename="{otype}.xes"'
            },
        )

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    else:

        @app.get("/")
        def root() -> Response:
            return _json_response({"service": "ocpm", "api": "/api/v1"})

    return app


def _anomaly_config(zeta) -> conf.AnomalyConfig:
    if zeta is None or zeta == "":
        return conf.AnomalyConfig()
    try:
        value = float(zeta)
        return conf.AnomalyConfig(zeta=value)
    except ValueError as exc:
        raise ApiError(400, "bad-request", f"invalid zeta: {exc}")
