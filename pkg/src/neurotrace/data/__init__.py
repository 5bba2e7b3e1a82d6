from .builtin import BUILTIN_NAMES, builtin_diabetes, builtin_iris, load_builtin
from .ingest import (
    apply_norm_stats,
    build_dataset,
    dataset_from_arrays,
    infer_schema,
    ingest_csv,
    normalize,
    parse_csv,
    split,
)
from .schema import Dataset, DatasetSchema, summarize

__all__ = [
    "Dataset",
    "DatasetSchema",
    "summarize",
    "parse_csv",
    "infer_schema",
    "normalize",
    "apply_norm_stats",
    "build_dataset",
    "ingest_csv",
    "dataset_from_arrays",
    "split",
    "builtin_iris",
    "builtin_diabetes",
    "load_builtin",
    "BUILTIN_NAMES",
]
