"""Mechanical checks over an event sequence.

validate_trace returns the first violation found, or None when the trace is
well-formed. Rules checked, in the order a violation would surface:

  seq-density          sequence numbers are consecutive integers
  epoch-order          epochs are contiguous and increasing
  grammar              events follow the epoch grammar (events.py)
  update-timing        a layer updates only after its backward pulse
  update-algebra       w_post = w_pre - lr*d_w exactly (and biases)
  snapshot-continuity  every weight snapshot matches the tracked state
  metrics-coherence    EPOCH_END repeats the epoch's LOSS_COMPUTED value

All checks run from event payloads alone; no dataset access is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .events import (
    ActivationsComputed,
    BackwardPulse,
    EpochEnd,
    EpochStart,
    ForwardPulse,
    LossComputed,
    OutputProduced,
    TrainingEvent,
    WeightsUpdated,
)


@dataclass(frozen=True)
class Violation:
    seq: int
    rule: str
    detail: str

    def __str__(self):
        return f"seq {self.seq}: [{self.rule}] {self.detail}"


def validate_trace(events: list[TrainingEvent]) -> Violation | None:
    if not events:
        return None

    first_seq = events[0].seq
    for i, ev in enumerate(events):
        if ev.seq != first_seq + i:
            return Violation(ev.seq, "seq-density", f"expected seq {first_seq + i}, got {ev.seq}")

    n_layers: int | None = None  # learned from the first epoch
    tracked_w: dict[int, np.ndarray] = {}
    tracked_b: dict[int, np.ndarray] = {}
    expected_epoch: int | None = None

    # phase: "start" | "forward" | "output" | "loss" | "backward" | "done"
    phase = "start"
    layer = 0
    epoch_loss: float | None = None

    for ev in events:
        if phase == "start":
            if not isinstance(ev, EpochStart):
                return Violation(ev.seq, "grammar", f"expected EPOCH_START, got {ev.type}")
            if expected_epoch is None:
                expected_epoch = ev.epoch
            if ev.epoch != expected_epoch:
                return Violation(ev.seq, "epoch-order", f"expected epoch {expected_epoch}, got {ev.epoch}")
            phase, layer = "forward", 1
            continue

        if ev.epoch != expected_epoch:
            return Violation(ev.seq, "epoch-order", f"event belongs to epoch {ev.epoch}, expected {expected_epoch}")

        if phase == "forward":
            if isinstance(ev, ForwardPulse):
                if ev.from_layer != layer - 1 or ev.to_layer != layer:
                    return Violation(
                        ev.seq, "grammar", f"expected FORWARD_PULSE {layer - 1}->{layer}, got {ev.from_layer}->{ev.to_layer}"
                    )
                snap = np.asarray(ev.edge_weights, dtype=np.float64)
                known = tracked_w.get(layer)
                if known is not None and not np.array_equal(snap, known):
                    return Violation(ev.seq, "snapshot-continuity", f"FORWARD_PULSE weights for layer {layer} differ from tracked state")
                tracked_w[layer] = snap
                phase = "activations"
                continue
            if isinstance(ev, OutputProduced) and layer > 1:
                if n_layers is None:
                    n_layers = layer - 1
                elif layer - 1 != n_layers:
                    return Violation(ev.seq, "grammar", f"epoch has {layer - 1} forward layers, expected {n_layers}")
                phase = "loss"
                continue
            return Violation(ev.seq, "grammar", f"expected FORWARD_PULSE or OUTPUT_PRODUCED, got {ev.type}")

        if phase == "activations":
            if not isinstance(ev, ActivationsComputed) or ev.layer != layer:
                return Violation(ev.seq, "grammar", f"expected ACTIVATIONS_COMPUTED({layer}), got {ev.type}")
            if n_layers is not None and layer > n_layers:
                return Violation(ev.seq, "grammar", f"forward phase exceeds {n_layers} layers")
            layer += 1
            phase = "forward"
            continue

        if phase == "loss":
            if not isinstance(ev, LossComputed):
                return Violation(ev.seq, "grammar", f"expected LOSS_COMPUTED, got {ev.type}")
            epoch_loss = ev.loss
            phase, layer = "backward", n_layers
            continue

        if phase == "backward":
            if isinstance(ev, WeightsUpdated):
                return Violation(
                    ev.seq, "update-timing", f"WEIGHTS_UPDATED({ev.layer}) before BACKWARD_PULSE(into {layer})"
                )
            if not isinstance(ev, BackwardPulse) or ev.into_layer != layer:
                return Violation(ev.seq, "grammar", f"expected BACKWARD_PULSE(into {layer}), got {ev.type}")
            phase = "update"
            continue

        if phase == "update":
            if not isinstance(ev, WeightsUpdated) or ev.layer != layer:
                return Violation(ev.seq, "grammar", f"expected WEIGHTS_UPDATED({layer}), got {ev.type}")
            w_pre = np.asarray(ev.w_pre, dtype=np.float64)
            w_post = np.asarray(ev.w_post, dtype=np.float64)
            b_pre = np.asarray(ev.b_pre, dtype=np.float64)
            b_post = np.asarray(ev.b_post, dtype=np.float64)
            d_w = np.asarray(ev.d_w, dtype=np.float64)
            d_b = np.asarray(ev.d_b, dtype=np.float64)
            known = tracked_w.get(layer)
            if known is not None and not np.array_equal(w_pre, known):
                return Violation(ev.seq, "snapshot-continuity", f"w_pre for layer {layer} differs from tracked state")
            known_b = tracked_b.get(layer)
            if known_b is not None and not np.array_equal(b_pre, known_b):
                return Violation(ev.seq, "snapshot-continuity", f"b_pre for layer {layer} differs from tracked state")
            if not np.array_equal(w_pre - ev.lr * d_w, w_post):
                return Violation(ev.seq, "update-algebra", f"w_post != w_pre - lr*d_w for layer {layer}")
            if not np.array_equal(b_pre - ev.lr * d_b, b_post):
                return Violation(ev.seq, "update-algebra", f"b_post != b_pre - lr*d_b for layer {layer}")
            tracked_w[layer] = w_post
            tracked_b[layer] = b_post
            layer -= 1
            phase = "backward" if layer >= 1 else "end"
            continue

        if phase == "end":
            if not isinstance(ev, EpochEnd):
                return Violation(ev.seq, "grammar", f"expected EPOCH_END, got {ev.type}")
            if epoch_loss is not None and ev.metrics.loss != epoch_loss:
                return Violation(ev.seq, "metrics-coherence", "EPOCH_END loss differs from LOSS_COMPUTED")
            expected_epoch += 1
            phase = "start"
            continue

    if phase != "start":
        last = events[-1]
        return Violation(last.seq, "grammar", f"trace ends mid-epoch (phase {phase})")
    return None
