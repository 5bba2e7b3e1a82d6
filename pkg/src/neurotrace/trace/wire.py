"""Line-oriented wire format: one JSON object per event, one event per line.

The exact field set and ordering is documented in docs/protocol.md. The
same bytes flow through trace files, the CLI, and the live stream, so
serialization must be deterministic: fixed key order, no whitespace,
repr-exact floats, NaN/Inf rejected.
"""

from __future__ import annotations

import json
from dataclasses import fields

from ..errors import ParseError
from ..nn.types import Metrics
from .events import EVENT_TYPES, EpochEnd, TrainingEvent


def event_to_dict(event: TrainingEvent) -> dict:
    out = {"type": event.type, "seq": event.seq, "epoch": event.epoch}
    for f in fields(event):
        if f.name in ("type", "seq", "epoch"):
            continue
        value = getattr(event, f.name)
        out[f.name] = value.to_dict() if isinstance(value, Metrics) else value
    return out


def serialize_event(event: TrainingEvent) -> str:
    """Event -> one UTF-8 JSON line (no trailing newline)."""
    return json.dumps(event_to_dict(event), separators=(",", ":"), allow_nan=False)


def event_from_dict(obj: dict) -> TrainingEvent:
    tag = obj.get("type")
    cls = EVENT_TYPES.get(tag)
    if cls is None:
        raise ParseError(f"unknown event type {tag!r}")
    payload = {k: v for k, v in obj.items() if k != "type"}
    if cls is EpochEnd:
        payload["metrics"] = Metrics.from_dict(payload["metrics"])
    try:
        return cls(**payload)
    except TypeError as exc:
        raise ParseError(f"bad fields for {tag}: {exc}") from exc


def deserialize_event(line: str, line_number: int | None = None) -> TrainingEvent:
    """One line -> event; raises ParseError carrying the line number."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line_number=line_number) from exc
    if not isinstance(obj, dict):
        raise ParseError("event line must be a JSON object", line_number=line_number)
    try:
        return event_from_dict(obj)
    except ParseError as exc:
        raise ParseError(str(exc), line_number=line_number) from exc


def write_trace(path, events) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for event in events:
            fh.write(serialize_event(event))
            fh.write("\n")


def read_trace(path) -> list[TrainingEvent]:
    events = []
    with open(path, "r", encoding="utf-8") as fh:
        for i, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            events.append(deserialize_event(line, line_number=i))
    return events
