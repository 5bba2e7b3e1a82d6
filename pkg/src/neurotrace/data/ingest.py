"""CSV ingestion: parsing, schema inference, normalization, splitting.

Built-in datasets go through the exact same pipeline as uploads. Row
numbers in errors are 1-based file positions (the header is row 1).
"""

from __future__ import annotations

import csv
import io

import numpy as np

from ..errors import IngestionError
from ..nn.types import TaskKind
from .schema import Dataset, DatasetSchema

MIN_ROWS = 10
MAX_CLASS_CARDINALITY = 10  # integer targets up to this many distinct values classify


def parse_csv(data: bytes | str) -> tuple[list[str], list[list[str]]]:
    """Comma-separated with double-quote quoting; first row is the header."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise IngestionError(f"file is not valid UTF-8 (byte {exc.start})") from exc
    else:
        text = data
    if not text.strip():
        raise IngestionError("file is empty")
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise IngestionError("file is empty") from None
    header = [h.strip() for h in header]
    rows: list[list[str]] = []
    for row_number, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise IngestionError(
                f"row {row_number} has {len(row)} values, expected {len(header)}",
                row=row_number,
            )
        rows.append([cell.strip() for cell in row])
    return header, rows


def _as_float(cell: str) -> float | None:
    try:
        return float(cell)
    except ValueError:
        return None


def infer_schema(
    header: list[str], rows: list[list[str]], target: str | None = None
) -> DatasetSchema:
    """Decide feature columns, target column, and task kind.

    The target is the last column unless named explicitly. A non-numeric
    target, or an integer-valued one with few distinct values, means
    classification; anything else numeric means regression. Every feature
    column must parse as a number.
    """
    if len(header) < 2:
        raise IngestionError(f"need at least 2 columns, found {len(header)}")
    if len(rows) < MIN_ROWS:
        raise IngestionError(f"need at least {MIN_ROWS} data rows, found {len(rows)}")
    if len(set(header)) != len(header):
        raise IngestionError("column names must be unique")

    if target is None:
        target_idx = len(header) - 1
    else:
        if target not in header:
            raise IngestionError(f"target column {target!r} not found in header")
        target_idx = header.index(target)
    target_name = header[target_idx]
    feature_idx = [i for i in range(len(header)) if i != target_idx]

    for row_number, row in enumerate(rows, start=2):
        for i, cell in enumerate(row):
            if cell == "":
                raise IngestionError(
                    f"missing value at row {row_number}, column {header[i]!r}",
                    row=row_number,
                    column=header[i],
                )

    for i in feature_idx:
        for row_number, row in enumerate(rows, start=2):
            if _as_float(row[i]) is None:
                raise IngestionError(
                    f"feature column {header[i]!r} is not numeric (row {row_number}: {row[i]!r})",
                    row=row_number,
                    column=header[i],
                )

    target_cells = [row[target_idx] for row in rows]
    numeric = [_as_float(c) for c in target_cells]
    if any(v is None for v in numeric):
        labels = sorted(set(target_cells))
        task = TaskKind.CLASSIFICATION
    else:
        integral = all(float(v) == int(v) for v in numeric)
        distinct = sorted(set(numeric))
        if integral and len(distinct) <= MAX_CLASS_CARDINALITY:
            labels = [str(int(v)) for v in distinct]
            task = TaskKind.CLASSIFICATION
        else:
            labels = []
            task = TaskKind.REGRESSION

    if task is TaskKind.CLASSIFICATION and len(labels) < 2:
        raise IngestionError(
            f"target column {target_name!r} has {len(labels)} distinct value(s); need at least 2 classes",
            column=target_name,
        )

    return DatasetSchema(
        feature_names=tuple(header[i] for i in feature_idx),
        target_name=target_name,
        task=task,
        class_labels=tuple(labels),
    )


def normalize(raw: np.ndarray) -> tuple[np.ndarray, list[tuple[float, float]]]:
    """Per-feature min-max scaling to [0, 1]; constant features map to 0."""
    raw = np.asarray(raw, dtype=np.float64)
    stats = [(float(col.min()), float(col.max())) for col in raw.T]
    return apply_norm_stats(raw, stats), stats


def apply_norm_stats(raw: np.ndarray, stats: list[tuple[float, float]]) -> np.ndarray:
    raw = np.asarray(raw, dtype=np.float64)
    out = np.empty_like(raw)
    for j, (lo, hi) in enumerate(stats):
        if hi > lo:
            out[:, j] = (raw[:, j] - lo) / (hi - lo)
        else:
            out[:, j] = 0.0
    return out


def _target_matrix(schema: DatasetSchema, target_cells: list[str]) -> np.ndarray:
    if schema.task is TaskKind.CLASSIFICATION:
        index = {label: k for k, label in enumerate(schema.class_labels)}
        y = np.zeros((len(target_cells), len(schema.class_labels)))
        for r, cell in enumerate(target_cells):
            value = _as_float(cell)
            key = cell if value is None else str(int(value))
            y[r, index[key]] = 1.0
        return y
    return np.array([[float(c)] for c in target_cells])


def build_dataset(
    name: str, header: list[str], rows: list[list[str]], target: str | None = None
) -> Dataset:
    """Assemble a Dataset with all rows in the training partition."""
    schema = infer_schema(header, rows, target=target)
    feature_idx = [header.index(f) for f in schema.feature_names]
    target_idx = header.index(schema.target_name)
    raw_x = np.array([[float(row[i]) for i in feature_idx] for row in rows])
    y = _target_matrix(schema, [row[target_idx] for row in rows])
    x, stats = normalize(raw_x)
    n = raw_x.shape[0]
    return Dataset(
        name=name,
        schema=schema,
        X=x,
        Y=y,
        norm_stats=stats,
        train_indices=np.arange(n),
        val_indices=np.arange(0),
        raw_X=raw_x,
    )


def ingest_csv(name: str, data: bytes | str, target: str | None = None) -> Dataset:
    header, rows = parse_csv(data)
    return build_dataset(name, header, rows, target=target)


def split(dataset: Dataset, val_fraction: float, seed: int) -> Dataset:
    """Seeded shuffle, then floor(n * val_fraction) rows become validation.

    Normalization statistics are refit on the training rows so validation
    data never leaks into them.
    """
    if not (0 <= val_fraction < 1):
        raise ValueError(f"val_fraction must be in [0, 1), got {val_fraction}")
    n = dataset.n_samples
    n_val = int(n * val_fraction)
    perm = np.random.default_rng(seed).permutation(n)
    val_idx = np.sort(perm[:n_val])
    train_idx = np.sort(perm[n_val:])
    raw = dataset.raw_X
    stats = [
        (float(col.min()), float(col.max())) for col in raw[train_idx].T
    ]
    return Dataset(
        name=dataset.name,
        schema=dataset.schema,
        X=apply_norm_stats(raw, stats),
        Y=dataset.Y,
        norm_stats=stats,
        train_indices=train_idx,
        val_indices=val_idx,
        raw_X=raw,
    )


def dataset_from_arrays(
    name: str,
    raw_x: np.ndarray,
    y: np.ndarray,
    schema: DatasetSchema,
) -> Dataset:
    """Programmatic construction (tiny synthetic sets skip CSV inference)."""
    raw_x = np.asarray(raw_x, dtype=np.float64)
    x, stats = normalize(raw_x)
    return Dataset(
        name=name,
        schema=schema,
        X=x,
        Y=np.asarray(y, dtype=np.float64),
        norm_stats=stats,
        train_indices=np.arange(raw_x.shape[0]),
        val_indices=np.arange(0),
        raw_X=raw_x,
    )
