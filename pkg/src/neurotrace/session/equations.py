"""Per-neuron weighted-sum equations rendered from the current parameters.

Input nodes are labelled by feature name, hidden neurons h1, h2, ...,
output neurons o1, o2, ... A neuron's equation lists its incoming weights
in source order, two decimal places, joined with " + ", bias last, wrapped
in the activation applied to it, e.g.

    o1 = softmax(0.45·h1 + 0.28·h2 + 0.16)
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ShapeError
from ..nn.types import ActivationKind, TaskKind
from .machine import Session


@dataclass(frozen=True)
class NeuronEquation:
    neuron_label: str
    terms: tuple[tuple[float, str], ...]  # (coefficient, source label)
    bias: float
    wrapper: str | None  # activation name, "softmax", or None (identity)
    rendered: str

    def to_dict(self) -> dict:
        return {
            "neuron_label": self.neuron_label,
            "terms": [{"coefficient": c, "source": s} for c, s in self.terms],
            "bias": self.bias,
            "wrapper": self.wrapper,
            "rendered": self.rendered,
        }


def source_labels(session: Session, layer: int) -> list[str]:
    """Labels of the neurons feeding weight layer `layer` (1-based)."""
    if layer == 1:
        return list(session.dataset.schema.feature_names)
    return [f"h{i + 1}" for i in range(session.config.layer_sizes[layer - 1])]


def neuron_label(session: Session, layer: int, index: int) -> str:
    if layer == len(session.config.layer_sizes) - 1:
        return f"o{index + 1}"
    return f"h{index + 1}"


def render_equation(label: str, terms, bias: float, wrapper: str | None) -> str:
    body = " + ".join(f"{c:.2f}·{src}" for c, src in terms)
    body = f"{body} + {bias:.2f}"
    if wrapper:
        return f"{label} = {wrapper}({body})"
    return f"{label} = {body}"


def neuron_equation(session: Session, layer: int, index: int) -> NeuronEquation:
    """Equation of one neuron; layer is 1-based (inputs have no equation),
    index is 0-based within the layer."""
    n_layers = len(session.config.layer_sizes) - 1
    if not (1 <= layer <= n_layers):
        raise ShapeError(f"layer must be in [1, {n_layers}], got {layer}")
    width = session.config.layer_sizes[layer]
    if not (0 <= index < width):
        raise ShapeError(f"neuron index must be in [0, {width}), got {index}")

    weights = session.params.weights[layer - 1][index]
    bias = float(session.params.biases[layer - 1][index])
    sources = source_labels(session, layer)
    terms = tuple((float(w), src) for w, src in zip(weights, sources))
    if layer == n_layers:
        wrapper = "softmax" if session.config.task is TaskKind.CLASSIFICATION else None
    else:
        wrapper = ActivationKind(session.config.activation).value
    label = neuron_label(session, layer, index)
    return NeuronEquation(
        neuron_label=label,
        terms=terms,
        bias=bias,
        wrapper=wrapper,
        rendered=render_equation(label, terms, bias, wrapper),
    )


def all_equations(session: Session) -> list[dict]:
    out = []
    for layer in range(1, len(session.config.layer_sizes)):
        neurons = [
            neuron_equation(session, layer, i).to_dict()
            for i in range(session.config.layer_sizes[layer])
        ]
        out.append({"layer": layer, "neurons": neurons})
    return out


_TERM_RE = re.compile(r"(-?\d+\.\d{2})·(\S+)")
_BIAS_RE = re.compile(r"\+ (-?\d+\.\d{2})\)?$")


def parse_rendered(rendered: str) -> tuple[list[tuple[float, str]], float]:
    """Inverse of render_equation at 2-decimal precision (for round-trip
    checks): returns ([(coefficient, source), ...], bias)."""
    terms = [(float(c), s.rstrip(")")) for c, s in _TERM_RE.findall(rendered)]
    bias_match = _BIAS_RE.search(rendered)
    if bias_match is None:
        raise ValueError(f"no bias term found in {rendered!r}")
    return terms, float(bias_match.group(1))
