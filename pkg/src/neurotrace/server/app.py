"""HTTP + WebSocket service exposing datasets, sessions, and live event streams.

Concurrency model: everything session-related runs on the event loop. Each
running session is driven by one asyncio task that emits events between
await points, so control commands and predictions (handled between those
points) always observe event-boundary state. Subscribers consume a
broadcast of serialized lines; the full per-session trace is retained in
memory up to `trace_cap` events, after which the session is stopped rather
than dropping history.

Error responses always carry a machine-readable code from the closed set
documented in docs/protocol.md.
"""

from __future__ import annotations

import asyncio
import json
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Query, Request, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..data import BUILTIN_NAMES, ingest_csv, load_builtin, split, summarize
from ..data.schema import Dataset
from ..errors import (
    ConfigError,
    IngestionError,
    InputError,
    NeurotraceError,
    ShapeError,
    StateError,
)
from ..nn.types import NetworkConfig
from ..session import Command, Session, SessionStatus, all_equations, create_session, neuron_equation
from ..trace.wire import serialize_event

DEFAULT_MAX_UPLOAD = 5 * 1024 * 1024
DEFAULT_TRACE_CAP = 200_000
DEFAULT_SESSION_CAP = 16

_STREAM_END = json.dumps({"type": "STREAM_END"}, separators=(",", ":"))


def _error(status: int, code: str, message: str, detail=None) -> JSONResponse:
    body = {"code": code, "message": message}
    if detail is not None:
        body["detail"] = detail
    return JSONResponse(status_code=status, content=body)


@dataclass
class SessionRuntime:
    """A session plus its retained trace and live subscribers."""

    session: Session
    dataset_id: str
    lines: list[str] = field(default_factory=list)  # index == seq
    subscribers: set[asyncio.Queue] = field(default_factory=set)
    driver: asyncio.Task | None = None

    def descriptor(self) -> dict:
        s = self.session
        return {
            "id": s.id,
            "dataset_id": self.dataset_id,
            "status": s.status.value,
            "current_epoch": s.current_epoch,
            "config": {
                "layer_sizes": list(s.config.layer_sizes),
                "activation": s.config.activation.value,
                "learning_rate": s.config.learning_rate,
                "epochs": s.config.epochs,
                "task": s.config.task.value,
                "seed": s.config.seed,
            },
        }

    def snapshot_line(self) -> str:
        s = self.session
        frame = {
            "type": "SNAPSHOT",
            "last_seq": s.next_seq - 1,
            "status": s.status.value,
            "current_epoch": s.current_epoch,
            "params": {
                "weights": [w.tolist() for w in s.params.weights],
                "biases": [b.tolist() for b in s.params.biases],
            },
            "metrics_history": [
                {"epoch": epoch, **metrics.to_dict()} for epoch, metrics in s.metrics_history
            ],
        }
        return json.dumps(frame, separators=(",", ":"), allow_nan=False)

    def broadcast(self, item: tuple):
        for q in list(self.subscribers):
            q.put_nowait(item)

    @property
    def terminal(self) -> bool:
        return self.session.status in (SessionStatus.COMPLETED, SessionStatus.STOPPED)


def create_app(
    *,
    pacing_delay: float = 0.0,
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD,
    trace_cap: int = DEFAULT_TRACE_CAP,
    session_cap: int = DEFAULT_SESSION_CAP,
    assets_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="neurotrace", docs_url=None, redoc_url=None)
    datasets: dict[str, Dataset] = {}
    runtimes: dict[str, SessionRuntime] = {}
    for name in BUILTIN_NAMES:
        datasets[name] = load_builtin(name)

    # -- datasets -----------------------------------------------------------

    @app.get("/datasets")
    def list_datasets():
        return [{"id": did, **summarize(ds)} for did, ds in datasets.items()]

    @app.get("/datasets/{dataset_id}")
    def get_dataset(dataset_id: str):
        ds = datasets.get(dataset_id)
        if ds is None:
            return _error(404, "NOT_FOUND", f"no dataset {dataset_id!r}")
        return {"id": dataset_id, **summarize(ds)}

    @app.post("/datasets", status_code=201)
    async def upload_dataset(
        request: Request,
        name: str | None = Query(None),
        target: str | None = Query(None),
    ):
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("multipart/form-data"):
            form = await request.form()
            upload = form.get("file")
            if upload is None:
                return _error(400, "DATASET_MALFORMED", "multipart upload needs a 'file' field")
            body = await upload.read()
            if name is None and getattr(upload, "filename", None):
                name = upload.filename.rsplit(".", 1)[0]
        else:
            body = await request.body()
        if len(body) > max_upload_bytes:
            return _error(
                413, "UPLOAD_TOO_LARGE", f"upload exceeds {max_upload_bytes} bytes"
            )
        dataset_id = f"d-{uuid.uuid4().hex[:8]}"
        try:
            ds = ingest_csv(name or dataset_id, body, target=target)
        except IngestionError as exc:
            detail = {}
            if exc.row is not None:
                detail["row"] = exc.row
            if exc.column is not None:
                detail["column"] = exc.column
            return _error(400, "DATASET_MALFORMED", str(exc), detail or None)
        datasets[dataset_id] = ds
        return {"id": dataset_id, **summarize(ds)}

    # -- sessions -----------------------------------------------------------

    @app.get("/sessions")
    def list_sessions():
        return [rt.descriptor() for rt in runtimes.values()]

    @app.post("/sessions", status_code=201)
    async def make_session(payload: dict):
        dataset_id = payload.get("dataset_id")
        ds = datasets.get(dataset_id)
        if ds is None:
            return _error(404, "NOT_FOUND", f"no dataset {dataset_id!r}")
        live = sum(1 for rt in runtimes.values() if not rt.terminal)
        if live >= session_cap:
            return _error(409, "SESSION_LIMIT", f"at most {session_cap} concurrent sessions")
        cfg_in = payload.get("config") or {}
        val_fraction = float(payload.get("val_fraction", 0.0))
        try:
            if val_fraction > 0:
                ds = split(ds, val_fraction, int(payload.get("split_seed", cfg_in.get("seed", 0))))
            if "layer_sizes" in cfg_in:
                layer_sizes = [int(v) for v in cfg_in["layer_sizes"]]
            else:
                hidden = [int(v) for v in cfg_in.get("hidden_layers", [8])]
                layer_sizes = [ds.n_features, *hidden, ds.output_size]
            config = NetworkConfig(
                layer_sizes=tuple(layer_sizes),
                activation=cfg_in.get("activation", "sigmoid"),
                learning_rate=float(cfg_in.get("learning_rate", 0.5)),
                epochs=int(cfg_in.get("epochs", 100)),
                task=ds.schema.task,
                seed=int(cfg_in.get("seed", 0)),
            )
            session = create_session(ds, config)
        except ConfigError as exc:
            return _error(400, "CONFIG_INVALID", str(exc), {"violations": exc.violations})
        except (ValueError, TypeError) as exc:
            return _error(400, "CONFIG_INVALID", f"bad config: {exc}")
        rt = SessionRuntime(session=session, dataset_id=dataset_id)
        runtimes[session.id] = rt
        return rt.descriptor()

    def _runtime(session_id: str) -> SessionRuntime | None:
        return runtimes.get(session_id)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        rt = _runtime(session_id)
        if rt is None:
            return _error(404, "NOT_FOUND", f"no session {session_id!r}")
        return {
            **rt.descriptor(),
            "network_info": rt.session.network_info(),
            "metrics_history": [
                {"epoch": epoch, **metrics.to_dict()}
                for epoch, metrics in rt.session.metrics_history
            ],
        }

    @app.get("/sessions/{session_id}/equations")
    def get_equations(
        session_id: str,
        layer: int | None = Query(None),
        index: int | None = Query(None),
    ):
        rt = _runtime(session_id)
        if rt is None:
            return _error(404, "NOT_FOUND", f"no session {session_id!r}")
        try:
            if layer is not None and index is not None:
                return neuron_equation(rt.session, layer, index).to_dict()
            return {"layers": all_equations(rt.session)}
        except ShapeError as exc:
            return _error(400, "INPUT_INVALID", str(exc))

    async def _drive(rt: SessionRuntime):
        session = rt.session
        while session.status is SessionStatus.RUNNING:
            if (
                session.events_remaining_in_epoch == 0
                and len(rt.lines) + session.events_per_epoch() > trace_cap
            ):
                # retention bound reached: refuse further epochs
                session.control(Command.STOP)
                break
            event = session.advance()
            line = serialize_event(event)
            rt.lines.append(line)
            rt.broadcast(("event", event.seq, line))
            await asyncio.sleep(pacing_delay)
        if rt.terminal:
            rt.broadcast(("end", None, None))

    @app.post("/sessions/{session_id}/control")
    async def control_session(session_id: str, payload: dict):
        rt = _runtime(session_id)
        if rt is None:
            return _error(404, "NOT_FOUND", f"no session {session_id!r}")
        command = str(payload.get("command", "")).lower()
        try:
            command = Command(command)
        except ValueError:
            return _error(400, "BAD_REQUEST", f"unknown command {payload.get('command')!r}")
        try:
            status = rt.session.control(command)
        except StateError as exc:
            return _error(409, "ILLEGAL_TRANSITION", str(exc), {"status": rt.session.status.value})
        if status is SessionStatus.RUNNING and (rt.driver is None or rt.driver.done()):
            rt.driver = asyncio.create_task(_drive(rt))
        if status is SessionStatus.STOPPED:
            rt.broadcast(("end", None, None))
        return {"status": status.value}

    @app.post("/sessions/{session_id}/predict")
    async def predict(session_id: str, payload: dict):
        rt = _runtime(session_id)
        if rt is None:
            return _error(404, "NOT_FOUND", f"no session {session_id!r}")
        inputs = payload.get("inputs")
        if not isinstance(inputs, list):
            return _error(400, "INPUT_INVALID", "'inputs' must be a list of numbers")
        try:
            return rt.session.predict(inputs)
        except (ShapeError, InputError, ValueError) as exc:
            return _error(400, "INPUT_INVALID", str(exc))

    # -- event stream ---------------------------------------------------------

    @app.websocket("/sessions/{session_id}/events")
    async def events_stream(ws: WebSocket, session_id: str, last_seq: int | None = Query(None)):
        rt = _runtime(session_id)
        if rt is None:
            await ws.close(code=4004, reason="no such session")
            return
        await ws.accept()
        queue: asyncio.Queue = asyncio.Queue()
        rt.subscribers.add(queue)
        try:
            # snapshot + replay are computed before any await so no event can
            # fall between the replayed prefix and the live queue
            snapshot = rt.snapshot_line()
            start = 0 if last_seq is None else last_seq + 1
            replay = rt.lines[start:] if last_seq is not None else []
            sent_through = start + len(replay) - 1 if replay else (last_seq if last_seq is not None else rt.session.next_seq - 1)
            was_terminal = rt.terminal

            await ws.send_text(snapshot)
            for line in replay:
                await ws.send_text(line)
            if was_terminal:
                await ws.send_text(_STREAM_END)
                await ws.close()
                return

            # tasks persist across iterations: cancelling a pending
            # queue.get() could lose a broadcast item
            getter: asyncio.Task | None = None
            receiver: asyncio.Task | None = None
            try:
                while True:
                    if getter is None:
                        getter = asyncio.ensure_future(queue.get())
                    if receiver is None:
                        receiver = asyncio.ensure_future(ws.receive())
                    done, _ = await asyncio.wait(
                        {getter, receiver}, return_when=asyncio.FIRST_COMPLETED
                    )
                    if receiver in done:
                        msg = receiver.result()
                        receiver = None
                        if msg.get("type") == "websocket.disconnect":
                            return
                    if getter in done:
                        kind, seq, line = getter.result()
                        getter = None
                        if kind == "end":
                            await ws.send_text(_STREAM_END)
                            await ws.close()
                            return
                        if seq <= sent_through:
                            continue  # already replayed
                        await ws.send_text(line)
                        sent_through = seq
            finally:
                for task in (getter, receiver):
                    if task is not None:
                        task.cancel()
        except (WebSocketDisconnect, RuntimeError):
            pass
        finally:
            rt.subscribers.discard(queue)

    @app.exception_handler(NeurotraceError)
    async def package_error_handler(request: Request, exc: NeurotraceError):
        return _error(400, "BAD_REQUEST", str(exc))

    if assets_dir:
        app.mount("/", StaticFiles(directory=assets_dir, html=True), name="ui")

    return app
