"""Live training session: play/pause/stop state machine over epoch traces.

A session owns the config, parameters, metrics history, and the sequence
counter. advance() emits exactly one event per call, so pausing between any
two events and resuming later reproduces the uninterrupted trace
byte-for-byte: each epoch's events are computed in one pure run_epoch call
and handed out incrementally.
"""

from __future__ import annotations

import uuid
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..data.schema import Dataset, summarize
from ..errors import ConfigError, InputError, ShapeError, StateError
from ..nn import core
from ..nn.types import Metrics, NetworkConfig, NetworkParams, TaskKind
from ..trace.epoch import run_epoch
from ..trace.events import EpochEnd, TrainingEvent, WeightsUpdated, events_per_epoch
from ..data.ingest import apply_norm_stats

MAX_HIDDEN_LAYERS = 6
MAX_NEURONS_PER_LAYER = 32
MAX_LEARNING_RATE = 10.0
MAX_EPOCHS = 10_000


class SessionStatus(str, Enum):
    IDLE = "idle"
    RUNNING = "running"
    PAUSED = "paused"
    COMPLETED = "completed"
    STOPPED = "stopped"


class Command(str, Enum):
    PLAY = "play"
    PAUSE = "pause"
    STOP = "stop"


# Legal (status, command) -> next status. Everything else is an error.
TRANSITIONS: dict[tuple[SessionStatus, Command], SessionStatus] = {
    (SessionStatus.IDLE, Command.PLAY): SessionStatus.RUNNING,
    (SessionStatus.RUNNING, Command.PAUSE): SessionStatus.PAUSED,
    (SessionStatus.RUNNING, Command.STOP): SessionStatus.STOPPED,
    (SessionStatus.PAUSED, Command.PLAY): SessionStatus.RUNNING,
    (SessionStatus.PAUSED, Command.STOP): SessionStatus.STOPPED,
}


def validate_config(dataset: Dataset, config: NetworkConfig) -> list[str]:
    """Bounds and dataset-consistency checks; violations come back as text."""
    violations = []
    sizes = config.layer_sizes
    if len(sizes) < 2:
        violations.append("layer_sizes must include input and output layers")
        return violations
    hidden = sizes[1:-1]
    if len(hidden) > MAX_HIDDEN_LAYERS:
        violations.append(f"at most {MAX_HIDDEN_LAYERS} hidden layers (got {len(hidden)})")
    for width in hidden:
        if not (1 <= width <= MAX_NEURONS_PER_LAYER):
            violations.append(
                f"hidden layer width {width} outside [1, {MAX_NEURONS_PER_LAYER}]"
            )
            break
    if not (0 < config.learning_rate <= MAX_LEARNING_RATE):
        violations.append(f"learning_rate must be in (0, {MAX_LEARNING_RATE}]")
    if not (1 <= config.epochs <= MAX_EPOCHS):
        violations.append(f"epochs must be in [1, {MAX_EPOCHS}]")
    if sizes[0] != dataset.n_features:
        violations.append(
            f"input size {sizes[0]} != feature count {dataset.n_features}"
        )
    if config.task is not dataset.schema.task:
        violations.append(
            f"config task {config.task.value!r} != dataset task {dataset.schema.task.value!r}"
        )
    if config.task is TaskKind.CLASSIFICATION and sizes[-1] != dataset.output_size:
        violations.append(
            f"output size {sizes[-1]} != class count {dataset.output_size}"
        )
    if config.task is TaskKind.REGRESSION and sizes[-1] != 1:
        violations.append("regression requires output size 1")
    return violations


@dataclass
class Session:
    id: str
    config: NetworkConfig
    dataset: Dataset
    params: NetworkParams
    status: SessionStatus = SessionStatus.IDLE
    current_epoch: int = 0
    next_seq: int = 0
    metrics_history: list[tuple[int, Metrics]] = field(default_factory=list)
    _pending: deque = field(default_factory=deque, repr=False)

    # -- lifecycle ---------------------------------------------------------

    def control(self, command: Command | str) -> SessionStatus:
        command = Command(command)
        nxt = TRANSITIONS.get((self.status, command))
        if nxt is None:
            raise StateError(
                f"command {command.value!r} is illegal in status {self.status.value!r}",
                status=self.status,
            )
        self.status = nxt
        if nxt is SessionStatus.STOPPED:
            self._pending.clear()
        return self.status

    @property
    def events_remaining_in_epoch(self) -> int:
        return len(self._pending)

    def events_per_epoch(self) -> int:
        return events_per_epoch(self.config.n_weight_layers)

    def advance(self) -> TrainingEvent:
        """Emit the next event of the trace (computing a fresh epoch when
        the previous one is fully emitted); apply its side effects."""
        if self.status is not SessionStatus.RUNNING:
            raise StateError(
                f"advance requires a running session (status {self.status.value!r})",
                status=self.status,
            )
        if not self._pending:
            result = run_epoch(
                self.params,
                self.config,
                self.dataset.train_arrays(),
                self.dataset.val_arrays(),
                epoch=self.current_epoch,
                seq_start=self.next_seq,
            )
            self._pending.extend(result.events)
        event = self._pending.popleft()
        self.next_seq = event.seq + 1
        if isinstance(event, WeightsUpdated):
            l = event.layer - 1
            self.params.weights[l] = np.asarray(event.w_post, dtype=np.float64)
            self.params.biases[l] = np.asarray(event.b_post, dtype=np.float64)
        elif isinstance(event, EpochEnd):
            self.metrics_history.append((event.epoch, event.metrics))
            self.current_epoch += 1
            if self.current_epoch >= self.config.epochs:
                self.status = SessionStatus.COMPLETED
        return event

    # -- queries -----------------------------------------------------------

    def predict(self, raw_inputs) -> dict:
        """Run inference on raw feature values with the current parameters.

        Legal in every status; never mutates the session or emits events.
        """
        arr = np.asarray(raw_inputs, dtype=np.float64)
        if arr.ndim != 1 or arr.shape[0] != self.dataset.n_features:
            raise ShapeError(
                f"expected {self.dataset.n_features} input values, got {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise InputError("inputs must be finite numbers")
        x = apply_norm_stats(arr.reshape(1, -1), self.dataset.norm_stats)
        output = core.forward_batch(self.params, x, self.config).output[0]
        if self.config.task is TaskKind.CLASSIFICATION:
            labels = self.dataset.schema.class_labels
            best = int(np.argmax(output))
            return {
                "probabilities": {labels[k]: float(output[k]) for k in range(len(labels))},
                "label": labels[best],
            }
        return {"value": float(output[0])}

    def network_info(self) -> dict:
        latest = self.metrics_history[-1][1].to_dict() if self.metrics_history else None
        return {
            "dataset": summarize(self.dataset),
            "architecture": {
                "layer_sizes": list(self.config.layer_sizes),
                "hidden_layers": len(self.config.layer_sizes) - 2,
                "activation": self.config.activation.value,
            },
            "training": {
                "status": self.status.value,
                "current_epoch": self.current_epoch,
                "total_epochs": self.config.epochs,
            },
            "hyperparameters": {
                "learning_rate": self.config.learning_rate,
                "epochs": self.config.epochs,
                "task": self.config.task.value,
                "seed": self.config.seed,
            },
            "model": {
                "parameter_count": self.config.parameter_count,
                "latest_metrics": latest,
            },
            "current_epoch": self.current_epoch,
        }


def create_session(dataset: Dataset, config: NetworkConfig) -> Session:
    violations = validate_config(dataset, config)
    if violations:
        raise ConfigError("; ".join(violations), violations=violations)
    config.validate()
    return Session(
        id=uuid.uuid4().hex[:12],
        config=config,
        dataset=dataset,
        params=core.init_params(config, config.seed),
    )
