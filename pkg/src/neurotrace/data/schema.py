"""Dataset container: normalized features, targets, schema, and split."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..nn.types import TaskKind


@dataclass(frozen=True)
class DatasetSchema:
    feature_names: tuple[str, ...]
    target_name: str
    task: TaskKind
    class_labels: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        object.__setattr__(self, "class_labels", tuple(self.class_labels))
        object.__setattr__(self, "task", TaskKind(self.task))


@dataclass
class Dataset:
    """Immutable after construction; share freely across sessions.

    X holds min-max normalized features. When a validation split exists the
    normalization statistics come from the training rows only, so training
    entries are guaranteed to lie in [0, 1] while validation entries may
    fall slightly outside.
    """

    name: str
    schema: DatasetSchema
    X: np.ndarray  # (n, d) normalized features
    Y: np.ndarray  # (n, k) one-hot for classification, (n, 1) for regression
    norm_stats: list[tuple[float, float]]  # per-feature (min, max)
    train_indices: np.ndarray
    val_indices: np.ndarray
    raw_X: np.ndarray = field(repr=False, default=None)  # kept for re-splitting

    @property
    def n_samples(self) -> int:
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    @property
    def output_size(self) -> int:
        return self.Y.shape[1]

    def train_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return self.X[self.train_indices], self.Y[self.train_indices]

    def val_arrays(self) -> tuple[np.ndarray, np.ndarray] | None:
        if len(self.val_indices) == 0:
            return None
        return self.X[self.val_indices], self.Y[self.val_indices]


def summarize(dataset: Dataset) -> dict:
    """The fields shown when a dataset is selected: sample count, feature
    names, target, task (plus class labels for classification)."""
    out = {
        "name": dataset.name,
        "samples": dataset.n_samples,
        "feature_names": list(dataset.schema.feature_names),
        "target_name": dataset.schema.target_name,
        "task": dataset.schema.task.value,
    }
    if dataset.schema.task is TaskKind.CLASSIFICATION:
        out["class_labels"] = list(dataset.schema.class_labels)
    if len(dataset.val_indices) > 0:
        out["train_samples"] = int(len(dataset.train_indices))
        out["val_samples"] = int(len(dataset.val_indices))
    return out
