"""Derived per-edge quantities for display."""

from __future__ import annotations

import numpy as np

from ..nn.types import NetworkParams


def edge_render_weights(params: NetworkParams) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Normalized |w| / max(|w| over the whole net) plus the sign per edge.

    All-zero weights normalize to 0.0 everywhere. Returned arrays mirror the
    weight-matrix shapes (row = destination neuron).
    """
    global_max = max((float(np.abs(w).max()) for w in params.weights), default=0.0)
    magnitudes, signs = [], []
    for w in params.weights:
        if global_max == 0.0:
            magnitudes.append(np.zeros_like(w))
        else:
            magnitudes.append(np.abs(w) / global_max)
        signs.append(np.sign(w))
    return magnitudes, signs
