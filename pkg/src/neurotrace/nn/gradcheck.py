"""Independent gradient oracle: central finite differences over every parameter.

Deliberately routed through the public forward/loss functions and nothing
from the backpropagation path, so agreement between the two is meaningful.
"""

from __future__ import annotations

import numpy as np

from .core import forward_batch, loss_batch
from .types import ActivationKind, ForwardTrace, Gradients, NetworkConfig, NetworkParams


def finite_diff_gradients(
    params: NetworkParams,
    x,
    target,
    config: NetworkConfig,
    eps: float = 1e-5,
) -> Gradients:
    """(loss(theta+eps) - loss(theta-eps)) / (2*eps), one parameter at a time."""
    if eps <= 0:
        raise ValueError("eps must be positive")

    def batch_loss(p: NetworkParams) -> float:
        return loss_batch(config.task, forward_batch(p, x, config).output, target)

    work = params.copy()
    d_weights = [np.zeros_like(w) for w in params.weights]
    d_biases = [np.zeros_like(b) for b in params.biases]
    for l in range(len(params.weights)):
        w = work.weights[l]
        for idx in np.ndindex(w.shape):
            orig = w[idx]
            w[idx] = orig + eps
            hi = batch_loss(work)
            w[idx] = orig - eps
            lo = batch_loss(work)
            w[idx] = orig
            d_weights[l][idx] = (hi - lo) / (2.0 * eps)
        b = work.biases[l]
        for i in range(b.shape[0]):
            orig = b[i]
            b[i] = orig + eps
            hi = batch_loss(work)
            b[i] = orig - eps
            lo = batch_loss(work)
            b[i] = orig
            d_biases[l][i] = (hi - lo) / (2.0 * eps)
    return Gradients(d_weights, d_biases, deltas=None)


def relu_kink_masks(
    trace: ForwardTrace, config: NetworkConfig, tol: float = 1e-3
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Boolean skip masks (True = exclude) for coordinates whose finite
    difference straddles a ReLU kink.

    A parameter of layer l is at risk when the pre-activation of the hidden
    unit it feeds is within tol of zero for some sample, or when any hidden
    pre-activation in a later layer is (the perturbation propagates forward).
    For non-ReLU nets every mask is all-False.
    """
    n_layers = len(trace.pre_activations)
    w_masks = [np.zeros((trace.pre_activations[l].shape[1], trace.activations[l].shape[1]), dtype=bool) for l in range(n_layers)]
    b_masks = [np.zeros(trace.pre_activations[l].shape[1], dtype=bool) for l in range(n_layers)]
    if ActivationKind(config.activation) is not ActivationKind.RELU:
        return w_masks, b_masks
    # hidden layers are 0..n_layers-2; the output layer has no kink
    near_kink_rows = [
        (np.abs(trace.pre_activations[l]) < tol).any(axis=0) for l in range(n_layers - 1)
    ]
    downstream = [
        any(bool(rows.any()) for rows in near_kink_rows[l + 1 :]) for l in range(n_layers)
    ]
    for l in range(n_layers):
        risky = downstream[l]
        if l < n_layers - 1:
            w_masks[l][near_kink_rows[l], :] = True
            b_masks[l][near_kink_rows[l]] = True
        if risky:
            w_masks[l][:, :] = True
            b_masks[l][:] = True
    return w_masks, b_masks


def max_relative_error(
    analytic: Gradients,
    numeric: Gradients,
    skip: tuple[list[np.ndarray], list[np.ndarray]] | None = None,
    floor: float = 1e-8,
) -> float:
    """max |a - n| / max(|a|, |n|, floor) over all unmasked coordinates."""
    w_masks, b_masks = skip if skip is not None else (None, None)
    worst = 0.0
    for l, (da, dn) in enumerate(zip(analytic.d_weights, numeric.d_weights)):
        diff = np.abs(da - dn) / np.maximum(np.maximum(np.abs(da), np.abs(dn)), floor)
        if w_masks is not None:
            diff = np.where(w_masks[l], 0.0, diff)
        worst = max(worst, float(diff.max()))
    for l, (da, dn) in enumerate(zip(analytic.d_biases, numeric.d_biases)):
        diff = np.abs(da - dn) / np.maximum(np.maximum(np.abs(da), np.abs(dn)), floor)
        if b_masks is not None:
            diff = np.where(b_masks[l], 0.0, diff)
        worst = max(worst, float(diff.max()))
    return worst
