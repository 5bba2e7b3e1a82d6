"""Execute one full-batch training epoch as an ordered event sequence."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DataError
from ..nn import core
from ..nn.types import Metrics, NetworkConfig, NetworkParams, TaskKind
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


@dataclass
class EpochResult:
    new_params: NetworkParams
    events: list[TrainingEvent]
    metrics: Metrics


def run_epoch(
    params: NetworkParams,
    config: NetworkConfig,
    train: tuple[np.ndarray, np.ndarray],
    val: tuple[np.ndarray, np.ndarray] | None = None,
    *,
    epoch: int = 0,
    seq_start: int = 0,
) -> EpochResult:
    """One forward/backward/update cycle over the whole training split.

    Events follow the epoch grammar in events.py. Metrics are computed with
    the epoch's starting parameters (the loss already produced by this
    epoch's forward phase, before any update), as are validation metrics.
    """
    x_train, y_train = train
    if x_train is None or len(x_train) == 0:
        raise DataError("training split is empty")

    seq = seq_start
    events: list[TrainingEvent] = []

    def emit(ctor, **kw):
        nonlocal seq
        events.append(ctor(seq=seq, epoch=epoch, **kw))
        seq += 1

    n_layers = len(params.weights)
    trace = core.forward_batch(params, x_train, config)

    emit(EpochStart)
    for l in range(n_layers):
        emit(
            ForwardPulse,
            from_layer=l,
            to_layer=l + 1,
            edge_weights=params.weights[l].tolist(),
        )
        emit(
            ActivationsComputed,
            layer=l + 1,
            values=trace.activations[l + 1].mean(axis=0).tolist(),
        )

    train_loss = core.loss_batch(config.task, trace.output, y_train)
    emit(OutputProduced, values=trace.output.mean(axis=0).tolist())
    emit(LossComputed, loss=train_loss)

    grads = core.backward_batch(params, trace, y_train, config)
    new_params = core.sgd_update(params, grads, config.learning_rate)

    for l in range(n_layers - 1, -1, -1):
        emit(BackwardPulse, into_layer=l + 1, deltas=grads.deltas[l].mean(axis=0).tolist())
        emit(
            WeightsUpdated,
            layer=l + 1,
            w_pre=params.weights[l].tolist(),
            w_post=new_params.weights[l].tolist(),
            b_pre=params.biases[l].tolist(),
            b_post=new_params.biases[l].tolist(),
            d_w=grads.d_weights[l].tolist(),
            d_b=grads.d_biases[l].tolist(),
            lr=config.learning_rate,
        )

    if config.task is TaskKind.CLASSIFICATION:
        train_acc = core.accuracy(trace.output, y_train, config.task)
    else:
        train_acc = None
    val_loss = val_acc = None
    if val is not None and val[0] is not None and len(val[0]) > 0:
        val_loss, val_acc = core.evaluate(params, val[0], val[1], config)

    metrics = Metrics(loss=train_loss, accuracy=train_acc, val_loss=val_loss, val_accuracy=val_acc)
    emit(EpochEnd, metrics=metrics)
    return EpochResult(new_params, events, metrics)
