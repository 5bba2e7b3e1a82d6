"""Hot numeric kernels for the batch forward/backward pass.

Two interchangeable implementations live here: numba @njit kernels
(default when numba is importable) and pure-numpy equivalents. The active
backend is picked once at import from the NEUROTRACE_KERNELS environment
variable ("numba" or "numpy"); both remain importable for parity tests and
the benchmark in benchmarks/bench_kernels.py.

All kernels take and return C-contiguous float64 arrays. Weight matrices
are (fan_out, fan_in): row = destination neuron.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if len(args) == 1 and callable(args[0]):
            return args[0]
        return wrap


# ---------------------------------------------------------------------------
# pure-numpy implementations
# ---------------------------------------------------------------------------


def np_affine(a_prev, w, b):
    """z = a_prev @ w.T + b for a batch; (n, fan_in) -> (n, fan_out)."""
    return a_prev @ w.T + b


def np_sigmoid(z):
    # split by sign so exp never overflows
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def np_relu(z):
    return np.maximum(z, 0.0)


def np_softmax_rows(z):
    shifted = z - z.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def np_backprop_delta_sigmoid(delta, w, a_prev):
    """delta[l-1] = (delta[l] @ W[l]) * a*(1-a), a = sigmoid activations."""
    return (delta @ w) * (a_prev * (1.0 - a_prev))


def np_backprop_delta_relu(delta, w, z_prev):
    """delta[l-1] = (delta[l] @ W[l]) * (z > 0); derivative at 0 is 0."""
    return (delta @ w) * (z_prev > 0.0)


def np_grad_weights(delta, a_prev):
    """dW = delta.T @ a_prev / n (batch-mean gradient)."""
    return delta.T @ a_prev / delta.shape[0]


def np_grad_biases(delta):
    return delta.sum(axis=0) / delta.shape[0]


NUMPY_KERNELS = {
    "affine": np_affine,
    "sigmoid": np_sigmoid,
    "relu": np_relu,
    "softmax_rows": np_softmax_rows,
    "backprop_delta_sigmoid": np_backprop_delta_sigmoid,
    "backprop_delta_relu": np_backprop_delta_relu,
    "grad_weights": np_grad_weights,
    "grad_biases": np_grad_biases,
}


# ---------------------------------------------------------------------------
# numba @njit implementations (explicit loops; no BLAS dependency)
# ---------------------------------------------------------------------------


@njit(cache=True)
def nb_affine(a_prev, w, b):
    n, fan_in = a_prev.shape
    fan_out = w.shape[0]
    out = np.empty((n, fan_out))
    for r in range(n):
        for i in range(fan_out):
            s = b[i]
            for j in range(fan_in):
                s += w[i, j] * a_prev[r, j]
            out[r, i] = s
    return out


@njit(cache=True)
def nb_sigmoid(z):
    n, m = z.shape
    out = np.empty((n, m))
    for r in range(n):
        for c in range(m):
            v = z[r, c]
            if v >= 0.0:
                out[r, c] = 1.0 / (1.0 + np.exp(-v))
            else:
                e = np.exp(v)
                out[r, c] = e / (1.0 + e)
    return out


@njit(cache=True)
def nb_relu(z):
    n, m = z.shape
    out = np.empty((n, m))
    for r in range(n):
        for c in range(m):
            v = z[r, c]
            out[r, c] = v if v > 0.0 else 0.0
    return out


@njit(cache=True)
def nb_softmax_rows(z):
    n, m = z.shape
    out = np.empty((n, m))
    for r in range(n):
        mx = z[r, 0]
        for c in range(1, m):
            if z[r, c] > mx:
                mx = z[r, c]
        total = 0.0
        for c in range(m):
            e = np.exp(z[r, c] - mx)
            out[r, c] = e
            total += e
        for c in range(m):
            out[r, c] /= total
    return out


@njit(cache=True)
def nb_backprop_delta_sigmoid(delta, w, a_prev):
    n = delta.shape[0]
    fan_out, fan_in = w.shape
    out = np.empty((n, fan_in))
    for r in range(n):
        for j in range(fan_in):
            s = 0.0
            for i in range(fan_out):
                s += delta[r, i] * w[i, j]
            a = a_prev[r, j]
            out[r, j] = s * a * (1.0 - a)
    return out


@njit(cache=True)
def nb_backprop_delta_relu(delta, w, z_prev):
    n = delta.shape[0]
    fan_out, fan_in = w.shape
    out = np.empty((n, fan_in))
    for r in range(n):
        for j in range(fan_in):
            if z_prev[r, j] > 0.0:
                s = 0.0
                for i in range(fan_out):
                    s += delta[r, i] * w[i, j]
                out[r, j] = s
            else:
                out[r, j] = 0.0
    return out


@njit(cache=True)
def nb_grad_weights(delta, a_prev):
    # accumulate sample by sample so both reads stay row-contiguous
    n, fan_out = delta.shape
    fan_in = a_prev.shape[1]
    out = np.zeros((fan_out, fan_in))
    for r in range(n):
        for i in range(fan_out):
            d = delta[r, i]
            for j in range(fan_in):
                out[i, j] += d * a_prev[r, j]
    return out / n


@njit(cache=True)
def nb_grad_biases(delta):
    n, fan_out = delta.shape
    out = np.empty(fan_out)
    for i in range(fan_out):
        s = 0.0
        for r in range(n):
            s += delta[r, i]
        out[i] = s / n
    return out


NUMBA_KERNELS = {
    "affine": nb_affine,
    "sigmoid": nb_sigmoid,
    "relu": nb_relu,
    "softmax_rows": nb_softmax_rows,
    "backprop_delta_sigmoid": nb_backprop_delta_sigmoid,
    "backprop_delta_relu": nb_backprop_delta_relu,
    "grad_weights": nb_grad_weights,
    "grad_biases": nb_grad_biases,
}


def _select_backend() -> str:
    requested = os.environ.get("NEUROTRACE_KERNELS", "").strip().lower()
    if requested not in ("", "numba", "numpy"):
        raise ValueError(
            f"NEUROTRACE_KERNELS must be 'numba' or 'numpy', got {requested!r}"
        )
    if requested == "numba" and not HAVE_NUMBA:
        raise ValueError("NEUROTRACE_KERNELS=numba but numba is not installed")
    if requested:
        return requested
    return "numba" if HAVE_NUMBA else "numpy"


ACTIVE_BACKEND = _select_backend()
_ACTIVE = NUMBA_KERNELS if ACTIVE_BACKEND == "numba" else NUMPY_KERNELS

affine = _ACTIVE["affine"]
sigmoid = _ACTIVE["sigmoid"]
relu = _ACTIVE["relu"]
softmax_rows = _ACTIVE["softmax_rows"]
backprop_delta_sigmoid = _ACTIVE["backprop_delta_sigmoid"]
backprop_delta_relu = _ACTIVE["backprop_delta_relu"]
grad_weights = _ACTIVE["grad_weights"]
grad_biases = _ACTIVE["grad_biases"]


def warmup():
    """Trigger JIT compilation of the active kernels on tiny inputs.

    A no-op on the numpy backend; call before timing-sensitive work so the
    one-time compile cost never lands inside a measured region.
    """
    a = np.array([[0.1, -0.2], [0.3, 0.4]])
    w = np.array([[0.5, -0.5], [0.25, 0.75]])
    b = np.array([0.0, 0.1])
    z = affine(a, w, b)
    sigmoid(z)
    relu(z)
    softmax_rows(z)
    backprop_delta_sigmoid(a, w, sigmoid(z))
    backprop_delta_relu(a, w, z)
    grad_weights(a, a)
    grad_biases(a)
