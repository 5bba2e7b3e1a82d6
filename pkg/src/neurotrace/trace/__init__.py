from .epoch import EpochResult, run_epoch
from .events import (
    EVENT_TYPES,
    ActivationsComputed,
    BackwardPulse,
    EpochEnd,
    EpochStart,
    ForwardPulse,
    LossComputed,
    OutputProduced,
    TrainingEvent,
    WeightsUpdated,
    events_per_epoch,
)
from .render import edge_render_weights
from .validate import Violation, validate_trace
from .wire import (
    deserialize_event,
    event_from_dict,
    event_to_dict,
    read_trace,
    serialize_event,
    write_trace,
)

__all__ = [
    "TrainingEvent",
    "EpochStart",
    "ForwardPulse",
    "ActivationsComputed",
    "OutputProduced",
    "LossComputed",
    "BackwardPulse",
    "WeightsUpdated",
    "EpochEnd",
    "EVENT_TYPES",
    "events_per_epoch",
    "run_epoch",
    "EpochResult",
    "validate_trace",
    "Violation",
    "serialize_event",
    "deserialize_event",
    "event_to_dict",
    "event_from_dict",
    "write_trace",
    "read_trace",
    "edge_render_weights",
]
