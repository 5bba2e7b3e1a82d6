"""Core value types for the multilayer perceptron."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import ConfigError


class ActivationKind(str, Enum):
    """Hidden-layer activation. The output layer is fixed by the task."""

    SIGMOID = "sigmoid"
    RELU = "relu"


class TaskKind(str, Enum):
    CLASSIFICATION = "classification"
    REGRESSION = "regression"


@dataclass(frozen=True)
class NetworkConfig:
    """Architecture and training hyperparameters.

    layer_sizes lists every layer width, input first, output last.
    """

    layer_sizes: tuple[int, ...]
    activation: ActivationKind
    learning_rate: float
    epochs: int
    task: TaskKind
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "layer_sizes", tuple(int(s) for s in self.layer_sizes))
        object.__setattr__(self, "activation", ActivationKind(self.activation))
        object.__setattr__(self, "task", TaskKind(self.task))

    def validate(self):
        """Raise ConfigError unless the structural invariants hold."""
        problems = []
        if len(self.layer_sizes) < 2:
            problems.append("layer_sizes must list at least input and output layers")
        if any(s < 1 for s in self.layer_sizes):
            problems.append("every layer size must be >= 1")
        if not (self.learning_rate > 0) or not np.isfinite(self.learning_rate):
            problems.append("learning_rate must be a positive finite number")
        if self.epochs < 1:
            problems.append("epochs must be >= 1")
        if self.task is TaskKind.REGRESSION and self.layer_sizes and self.layer_sizes[-1] != 1:
            problems.append("regression requires output size 1")
        if self.task is TaskKind.CLASSIFICATION and self.layer_sizes and self.layer_sizes[-1] < 2:
            problems.append("classification requires output size >= 2")
        if self.seed < 0:
            problems.append("seed must be a nonnegative integer")
        if problems:
            raise ConfigError("; ".join(problems), violations=problems)
        return self

    @property
    def n_weight_layers(self) -> int:
        return len(self.layer_sizes) - 1

    @property
    def parameter_count(self) -> int:
        return sum(
            self.layer_sizes[l] * self.layer_sizes[l + 1] + self.layer_sizes[l + 1]
            for l in range(self.n_weight_layers)
        )


@dataclass
class NetworkParams:
    """Per-layer weight matrices and bias vectors.

    weights[l] has shape (fan_out, fan_in): row = destination neuron.
    """

    weights: list[np.ndarray]
    biases: list[np.ndarray]

    def copy(self) -> "NetworkParams":
        return NetworkParams(
            [w.copy() for w in self.weights],
            [b.copy() for b in self.biases],
        )

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return (self.weights[0].shape[1],) + tuple(w.shape[0] for w in self.weights)

    def allclose(self, other: "NetworkParams", rtol=0.0, atol=0.0) -> bool:
        return all(
            np.allclose(a, b, rtol=rtol, atol=atol)
            for a, b in zip(self.weights + self.biases, other.weights + other.biases)
        )

    def equal(self, other: "NetworkParams") -> bool:
        return all(
            np.array_equal(a, b)
            for a, b in zip(self.weights + self.biases, other.weights + other.biases)
        )


@dataclass
class ForwardTrace:
    """Intermediate state of one forward pass over a batch.

    pre_activations[l] and activations[l+1] correspond to weight layer l;
    activations[0] is the input batch. Arrays are (n, width).
    """

    pre_activations: list[np.ndarray]
    activations: list[np.ndarray]

    @property
    def output(self) -> np.ndarray:
        return self.activations[-1]


@dataclass
class Gradients:
    """Loss gradients mirroring NetworkParams, plus per-layer error signals.

    deltas is None when produced by a method that does not compute error
    signals (finite differences).
    """

    d_weights: list[np.ndarray]
    d_biases: list[np.ndarray]
    deltas: list[np.ndarray] | None = None


@dataclass(frozen=True)
class Metrics:
    """Per-epoch metrics; accuracy only exists for classification and the
    val_* pair only when a validation split exists."""

    loss: float
    accuracy: float | None = None
    val_loss: float | None = None
    val_accuracy: float | None = None

    def to_dict(self) -> dict:
        out = {"loss": self.loss}
        if self.accuracy is not None:
            out["accuracy"] = self.accuracy
        if self.val_loss is not None:
            out["val_loss"] = self.val_loss
        if self.val_accuracy is not None:
            out["val_accuracy"] = self.val_accuracy
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Metrics":
        return cls(
            loss=float(d["loss"]),
            accuracy=d.get("accuracy"),
            val_loss=d.get("val_loss"),
            val_accuracy=d.get("val_accuracy"),
        )
