import numpy as np
import pytest

from neurotrace.data import builtin_diabetes, builtin_iris, dataset_from_arrays, split
from neurotrace.data.schema import DatasetSchema
from neurotrace.nn import NetworkConfig, kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT compile (numba backend) before anything timing-sensitive runs
    kernels.warmup()


@pytest.fixture(scope="session")
def iris():
    return builtin_iris()


@pytest.fixture(scope="session")
def diabetes():
    return builtin_diabetes()


@pytest.fixture(scope="session")
def iris_split(iris):
    return split(iris, 0.2, 7)


@pytest.fixture()
def xor_dataset():
    schema = DatasetSchema(("x1", "x2"), "xor", "regression")
    raw = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
    y = np.array([[0.0], [1.0], [1.0], [0.0]])
    return dataset_from_arrays("xor", raw, y, schema)


def iris_config(epochs=300, lr=0.5, hidden=(8,), activation="sigmoid", seed=7):
    return NetworkConfig((4, *hidden, 3), activation, lr, epochs, "classification", seed=seed)
