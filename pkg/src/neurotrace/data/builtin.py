"""Built-in sample datasets, embedded as CSV resources.

iris: 150 flowers, 4 features, 3 species classes (classification).
diabetes: 442 patients, 6 clinical features, disease-progression target
(regression).
"""

from __future__ import annotations

from importlib import resources

from .ingest import ingest_csv
from .schema import Dataset

BUILTIN_NAMES = ("iris", "diabetes")


def _load_resource(name: str) -> bytes:
    return resources.files(__package__).joinpath(f"resources/{name}.csv").read_bytes()


def builtin_iris() -> Dataset:
    return ingest_csv("iris", _load_resource("iris"))


def builtin_diabetes() -> Dataset:
    return ingest_csv("diabetes", _load_resource("diabetes"))


def load_builtin(name: str) -> Dataset:
    if name == "iris":
        return builtin_iris()
    if name == "diabetes":
        return builtin_diabetes()
    raise KeyError(f"unknown built-in dataset {name!r}")
