"""Multilayer-perceptron math: initialization, forward, loss, backward, update.

Batch semantics: the training objective is the mean of per-sample losses,
so gradients are batch means. Single-sample entry points are the n=1 case
of the batch ones and share the same code path.

Loss conventions (fixed for the whole package):
  classification: softmax output, cross-entropy -sum(t*ln(max(o, 1e-12)))
  regression:     identity output, squared error scaled so the output
                  residual is the exact gradient: (1/(2*n_out))*sum((o-t)^2)
Under both, d(loss)/d(pre-activation of the output layer) = output - target
(divided by n_out for regression), which keeps the two code paths symmetric.
"""

from __future__ import annotations

import numpy as np

from ..errors import ShapeError, UnsupportedMetricError
from . import kernels
from .types import ActivationKind, ForwardTrace, Gradients, NetworkConfig, NetworkParams, TaskKind

CROSS_ENTROPY_EPS = 1e-12


def init_params(config: NetworkConfig, seed: int | None = None) -> NetworkParams:
    """Glorot-uniform weights, zero biases, fully determined by the seed.

    Each layer draws from its own spawned seed stream, so layer l's values
    do not depend on the widths of the other layers.
    """
    config.validate()
    if seed is None:
        seed = config.seed
    sizes = config.layer_sizes
    children = np.random.SeedSequence(seed).spawn(len(sizes) - 1)
    weights, biases = [], []
    for l in range(len(sizes) - 1):
        fan_in, fan_out = sizes[l], sizes[l + 1]
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        rng = np.random.default_rng(children[l])
        weights.append(rng.uniform(-limit, limit, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return NetworkParams(weights, biases)


def activate(kind: ActivationKind, z: float) -> float:
    """Scalar hidden-layer activation."""
    kind = ActivationKind(kind)
    if kind is ActivationKind.SIGMOID:
        if z >= 0:
            return 1.0 / (1.0 + np.exp(-z))
        e = np.exp(z)
        return float(e / (1.0 + e))
    return z if z > 0.0 else 0.0


def _as_batch(x) -> np.ndarray:
    arr = np.ascontiguousarray(np.asarray(x, dtype=np.float64))
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ShapeError(f"expected a vector or matrix of samples, got ndim={arr.ndim}")
    return arr


def _check_input_width(params: NetworkParams, x: np.ndarray):
    expected = params.weights[0].shape[1]
    if x.shape[1] != expected:
        raise ShapeError(f"input width {x.shape[1]} != network input size {expected}")


def forward_batch(params: NetworkParams, x, config: NetworkConfig) -> ForwardTrace:
    """Forward pass over a batch; returns every pre-activation and activation."""
    a = _as_batch(x)
    _check_input_width(params, a)
    n_layers = len(params.weights)
    hidden = ActivationKind(config.activation)
    pre, acts = [], [a]
    for l in range(n_layers):
        z = kernels.affine(acts[-1], np.ascontiguousarray(params.weights[l]), params.biases[l])
        pre.append(z)
        if l < n_layers - 1:
            acts.append(kernels.sigmoid(z) if hidden is ActivationKind.SIGMOID else kernels.relu(z))
        elif config.task is TaskKind.CLASSIFICATION:
            acts.append(kernels.softmax_rows(z))
        else:
            acts.append(z)
    return ForwardTrace(pre, acts)


def forward(params: NetworkParams, x, config: NetworkConfig) -> ForwardTrace:
    """Single-sample forward pass (a 1-row batch)."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ShapeError("forward expects a single feature vector; use forward_batch for matrices")
    return forward_batch(params, arr.reshape(1, -1), config)


def loss_batch(task: TaskKind, output, target) -> float:
    """Mean per-sample loss over a batch."""
    o = _as_batch(output)
    t = _as_batch(target)
    if o.shape != t.shape:
        raise ShapeError(f"output shape {o.shape} != target shape {t.shape}")
    if TaskKind(task) is TaskKind.CLASSIFICATION:
        per_sample = -np.sum(t * np.log(np.maximum(o, CROSS_ENTROPY_EPS)), axis=1)
    else:
        per_sample = np.sum((o - t) ** 2, axis=1) / (2.0 * o.shape[1])
    return float(np.mean(per_sample))


def loss(task: TaskKind, output, target) -> float:
    """Loss for one sample."""
    o = np.asarray(output, dtype=np.float64).reshape(1, -1)
    t = np.asarray(target, dtype=np.float64).reshape(1, -1)
    return loss_batch(task, o, t)


def output_delta(task: TaskKind, output: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Error signal at the output layer: the residual output - target.

    Exact gradient of the batch loss w.r.t. the output pre-activations,
    times the batch size (the 1/n batch mean is folded into grad_weights).
    """
    if TaskKind(task) is TaskKind.CLASSIFICATION:
        return output - target
    return (output - target) / output.shape[1]


def backward_batch(
    params: NetworkParams, trace: ForwardTrace, target, config: NetworkConfig
) -> Gradients:
    """Backpropagation over a batch; gradients are means over samples."""
    t = _as_batch(target)
    out = trace.output
    if out.shape != t.shape:
        raise ShapeError(f"target shape {t.shape} does not match output shape {out.shape}")
    n_layers = len(params.weights)
    hidden = ActivationKind(config.activation)
    delta = output_delta(config.task, out, t)
    d_weights = [None] * n_layers
    d_biases = [None] * n_layers
    deltas = [None] * n_layers
    for l in range(n_layers - 1, -1, -1):
        deltas[l] = delta
        d_weights[l] = kernels.grad_weights(delta, trace.activations[l])
        d_biases[l] = kernels.grad_biases(delta)
        if l > 0:
            w = np.ascontiguousarray(params.weights[l])
            if hidden is ActivationKind.SIGMOID:
                delta = kernels.backprop_delta_sigmoid(delta, w, trace.activations[l])
            else:
                delta = kernels.backprop_delta_relu(delta, w, trace.pre_activations[l - 1])
    return Gradients(d_weights, d_biases, deltas)


def backward(params: NetworkParams, trace: ForwardTrace, target, config: NetworkConfig) -> Gradients:
    """Single-sample backpropagation."""
    t = np.asarray(target, dtype=np.float64)
    if t.ndim != 1:
        raise ShapeError("backward expects a single target vector")
    return backward_batch(params, trace, t.reshape(1, -1), config)


def sgd_update(params: NetworkParams, grads: Gradients, lr: float) -> NetworkParams:
    """post = pre - lr * grad, elementwise, for every weight and bias.

    Plain numpy on both kernel backends so the update algebra is identical
    everywhere it is recomputed (trace validation replays this exact op).
    """
    if len(grads.d_weights) != len(params.weights):
        raise ShapeError("gradient layer count does not match params")
    new_w, new_b = [], []
    for w, b, dw, db in zip(params.weights, params.biases, grads.d_weights, grads.d_biases):
        if w.shape != dw.shape or b.shape != db.shape:
            raise ShapeError(f"gradient shape {dw.shape}/{db.shape} != param shape {w.shape}/{b.shape}")
        new_w.append(w - lr * dw)
        new_b.append(b - lr * db)
    return NetworkParams(new_w, new_b)


def accuracy(outputs, targets, task: TaskKind) -> float:
    """Fraction of samples whose argmax matches; classification only.

    np.argmax breaks ties toward the lowest index.
    """
    if TaskKind(task) is not TaskKind.CLASSIFICATION:
        raise UnsupportedMetricError("accuracy is defined for classification only")
    o = _as_batch(outputs)
    t = _as_batch(targets)
    if o.shape[0] != t.shape[0]:
        raise ShapeError(f"{o.shape[0]} outputs vs {t.shape[0]} targets")
    return float(np.mean(np.argmax(o, axis=1) == np.argmax(t, axis=1)))


def evaluate(params: NetworkParams, x, y, config: NetworkConfig) -> tuple[float, float | None]:
    """(loss, accuracy-or-None) of params on a labelled batch."""
    out = forward_batch(params, x, config).output
    batch_loss = loss_batch(config.task, out, y)
    acc = accuracy(out, y, config.task) if config.task is TaskKind.CLASSIFICATION else None
    return batch_loss, acc
