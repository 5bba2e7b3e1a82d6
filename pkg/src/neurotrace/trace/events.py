"""Training-event vocabulary.

Every event carries a session-wide sequence number and the epoch it belongs
to. Payloads are plain Python lists/floats (full snapshots, not deltas) so
events serialize directly and consumers stay stateless. Layer numbering in
events is 1-based over weight layers: layer 0 is the input, layer L the
output of a net with L weight layers.

One epoch with L weight layers emits, in order:

    EPOCH_START,
    FORWARD_PULSE(0->1), ACTIVATIONS_COMPUTED(1),
    ...,
    FORWARD_PULSE(L-1->L), ACTIVATIONS_COMPUTED(L),
    OUTPUT_PRODUCED, LOSS_COMPUTED,
    BACKWARD_PULSE(into L), WEIGHTS_UPDATED(L),
    ...,
    BACKWARD_PULSE(into 1), WEIGHTS_UPDATED(1),
    EPOCH_END

so a layer's weights change only after the backward pulse reaches it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..nn.types import Metrics


@dataclass(frozen=True)
class EpochStart:
    seq: int
    epoch: int
    type: str = field(default="EPOCH_START", init=False, repr=False)


@dataclass(frozen=True)
class ForwardPulse:
    seq: int
    epoch: int
    from_layer: int
    to_layer: int
    edge_weights: list  # snapshot of W[to_layer], row = destination neuron
    type: str = field(default="FORWARD_PULSE", init=False, repr=False)


@dataclass(frozen=True)
class ActivationsComputed:
    seq: int
    epoch: int
    layer: int
    values: list  # batch-mean activation per neuron
    type: str = field(default="ACTIVATIONS_COMPUTED", init=False, repr=False)


@dataclass(frozen=True)
class OutputProduced:
    seq: int
    epoch: int
    values: list
    type: str = field(default="OUTPUT_PRODUCED", init=False, repr=False)


@dataclass(frozen=True)
class LossComputed:
    seq: int
    epoch: int
    loss: float
    type: str = field(default="LOSS_COMPUTED", init=False, repr=False)


@dataclass(frozen=True)
class BackwardPulse:
    seq: int
    epoch: int
    into_layer: int
    deltas: list  # batch-mean error signal per neuron
    type: str = field(default="BACKWARD_PULSE", init=False, repr=False)


@dataclass(frozen=True)
class WeightsUpdated:
    seq: int
    epoch: int
    layer: int
    w_pre: list
    w_post: list
    b_pre: list
    b_post: list
    d_w: list
    d_b: list
    lr: float
    type: str = field(default="WEIGHTS_UPDATED", init=False, repr=False)


@dataclass(frozen=True)
class EpochEnd:
    seq: int
    epoch: int
    metrics: Metrics
    type: str = field(default="EPOCH_END", init=False, repr=False)


TrainingEvent = (
    EpochStart
    | ForwardPulse
    | ActivationsComputed
    | OutputProduced
    | LossComputed
    | BackwardPulse
    | WeightsUpdated
    | EpochEnd
)

EVENT_TYPES = {
    "EPOCH_START": EpochStart,
    "FORWARD_PULSE": ForwardPulse,
    "ACTIVATIONS_COMPUTED": ActivationsComputed,
    "OUTPUT_PRODUCED": OutputProduced,
    "LOSS_COMPUTED": LossComputed,
    "BACKWARD_PULSE": BackwardPulse,
    "WEIGHTS_UPDATED": WeightsUpdated,
    "EPOCH_END": EpochEnd,
}


def events_per_epoch(n_weight_layers: int) -> int:
    """1 start + 2 per layer forward + output + loss + 2 per layer backward + 1 end."""
    return 4 * n_weight_layers + 4
