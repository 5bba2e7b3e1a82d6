import numpy as np
import pytest

from neurotrace.nn import (
    NetworkConfig,
    NetworkParams,
    backward,
    backward_batch,
    finite_diff_gradients,
    forward,
    forward_batch,
    max_relative_error,
    relu_kink_masks,
    init_params,
)


def test_linear_net_hand_differentiated():
    # single weight layer, identity output: loss = (w*x - t)^2 / 2,
    # so dL/dw = (w*x - t)*x = (2*1 - 0)*1 = 2 and dL/db = 2
    c = NetworkConfig((1, 1), "sigmoid", 0.1, 1, "regression")
    params = NetworkParams([np.array([[2.0]])], [np.array([0.0])])
    fd = finite_diff_gradients(params, np.array([1.0]), np.array([0.0]), c)
    assert fd.d_weights[0][0, 0] == pytest.approx(2.0, rel=1e-7)
    assert fd.d_biases[0][0] == pytest.approx(2.0, rel=1e-7)
    an = backward(params, forward(params, np.array([1.0]), c), np.array([0.0]), c)
    assert an.d_weights[0][0, 0] == pytest.approx(2.0, abs=1e-12)


def test_eps_shrink_improves_estimate():
    # central differences on a smooth (sigmoid) net have O(eps^2) error
    c = NetworkConfig((2, 3, 2), "sigmoid", 0.1, 1, "classification", seed=4)
    params = init_params(c, 4)
    x = np.array([0.3, 0.8])
    t = np.array([0.0, 1.0])
    analytic = backward(params, forward(params, x, c), t, c)
    errors = []
    for eps in (1e-2, 5e-3, 2.5e-3):
        fd = finite_diff_gradients(params, x, t, c, eps=eps)
        errors.append(max_relative_error(analytic, fd))
    assert errors[0] > errors[1] > errors[2]


@pytest.mark.parametrize("sizes,task", [((2, 3, 2), "classification"), ((6, 4, 1), "regression")])
@pytest.mark.parametrize("activation", ["sigmoid", "relu"])
def test_analytic_matches_finite_differences(sizes, task, activation):
    rng = np.random.default_rng(hash((sizes, task, activation)) % 2**32)
    for trial in range(3):
        seed = int(rng.integers(1_000_000))
        c = NetworkConfig(sizes, activation, 0.1, 1, task, seed=seed)
        params = init_params(c, seed)
        x = rng.uniform(0.0, 1.0, (4, sizes[0]))
        if task == "classification":
            t = np.eye(sizes[-1])[rng.integers(sizes[-1], size=4)]
        else:
            t = rng.uniform(0.0, 1.0, (4, 1))
        trace = forward_batch(params, x, c)
        analytic = backward_batch(params, trace, t, c)
        fd = finite_diff_gradients(params, x, t, c, eps=1e-5)
        masks = relu_kink_masks(trace, c)
        assert max_relative_error(analytic, fd, skip=masks) <= 1e-4


def test_fd_rejects_nonpositive_eps():
    c = NetworkConfig((1, 1), "sigmoid", 0.1, 1, "regression")
    params = NetworkParams([np.array([[1.0]])], [np.array([0.0])])
    with pytest.raises(ValueError):
        finite_diff_gradients(params, np.array([1.0]), np.array([0.0]), c, eps=0.0)
