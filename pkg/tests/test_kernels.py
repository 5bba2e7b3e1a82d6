"""Parity between the numba and numpy kernel backends."""

import subprocess
import sys

import numpy as np
import pytest

from neurotrace.nn import kernels

pytestmark = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")

RNG = np.random.default_rng(123)


def _case(n=7, fan_in=5, fan_out=4):
    a = np.ascontiguousarray(RNG.uniform(-2, 2, (n, fan_in)))
    w = np.ascontiguousarray(RNG.uniform(-1, 1, (fan_out, fan_in)))
    b = RNG.uniform(-1, 1, fan_out)
    d = np.ascontiguousarray(RNG.uniform(-1, 1, (n, fan_out)))
    return a, w, b, d


@pytest.mark.parametrize("name", sorted(kernels.NUMPY_KERNELS))
def test_backends_agree(name):
    a, w, b, d = _case()
    np_fn = kernels.NUMPY_KERNELS[name]
    nb_fn = kernels.NUMBA_KERNELS[name]
    if name == "affine":
        args = (a, w, b)
    elif name in ("sigmoid", "relu", "softmax_rows"):
        args = (a,)
    elif name == "backprop_delta_sigmoid":
        args = (d, w, kernels.np_sigmoid(a))
    elif name == "backprop_delta_relu":
        args = (d, w, a)
    elif name == "grad_weights":
        args = (d, np.ascontiguousarray(a[:, : w.shape[1]]))
    else:  # grad_biases
        args = (d,)
    got_np = np_fn(*args)
    got_nb = nb_fn(*args)
    assert np.allclose(got_np, got_nb, rtol=1e-13, atol=1e-14)


def test_short_training_parity_between_backends():
    # same seed, 50 epochs on each backend in subprocesses; losses must agree
    script = (
        "from neurotrace.nn import NetworkConfig, init_params;"
        "from neurotrace.trace import run_epoch;"
        "import numpy as np;"
        "rng = np.random.default_rng(0);"
        "x = rng.uniform(0, 1, (30, 4)); y = np.eye(3)[rng.integers(3, size=30)];"
        "c = NetworkConfig((4, 8, 3), 'sigmoid', 0.5, 50, 'classification', seed=7);"
        "p = init_params(c, 7)\n"
        "for e in range(50):\n"
        "    r = run_epoch(p, c, (x, y), epoch=e)\n"
        "    p = r.new_params\n"
        "print(repr(r.metrics.loss))"
    )
    outs = {}
    for backend in ("numba", "numpy"):
        proc = subprocess.run(
            [sys.executable, "-c", script],
            capture_output=True,
            text=True,
            env={"NEUROTRACE_KERNELS": backend, "PATH": "/usr/bin:/bin:/usr/local/bin"},
        )
        assert proc.returncode == 0, proc.stderr
        outs[backend] = float(proc.stdout.strip())
    assert outs["numba"] == pytest.approx(outs["numpy"], rel=1e-9)


def test_env_flag_selects_numpy_backend():
    proc = subprocess.run(
        [
            sys.executable,
            "-c",
            "from neurotrace.nn import kernels; print(kernels.ACTIVE_BACKEND)",
        ],
        capture_output=True,
        text=True,
        env={"NEUROTRACE_KERNELS": "numpy", "PATH": "/usr/bin:/bin:/usr/local/bin"},
    )
    assert proc.stdout.strip() == "numpy"


def test_env_flag_rejects_unknown_backend():
    proc = subprocess.run(
        [
            sys.executable,
            "-c",
            "from neurotrace.nn import kernels",
        ],
        capture_output=True,
        text=True,
        env={"NEUROTRACE_KERNELS": "cuda", "PATH": "/usr/bin:/bin:/usr/local/bin"},
    )
    assert proc.returncode != 0
    assert "NEUROTRACE_KERNELS" in proc.stderr
