from .core import (
    CROSS_ENTROPY_EPS,
    accuracy,
    activate,
    backward,
    backward_batch,
    evaluate,
    forward,
    forward_batch,
    init_params,
    loss,
    loss_batch,
    output_delta,
    sgd_update,
)
from .gradcheck import finite_diff_gradients, max_relative_error, relu_kink_masks
from .types import (
    ActivationKind,
    ForwardTrace,
    Gradients,
    Metrics,
    NetworkConfig,
    NetworkParams,
    TaskKind,
)

__all__ = [
    "ActivationKind",
    "TaskKind",
    "NetworkConfig",
    "NetworkParams",
    "ForwardTrace",
    "Gradients",
    "Metrics",
    "CROSS_ENTROPY_EPS",
    "init_params",
    "activate",
    "forward",
    "forward_batch",
    "loss",
    "loss_batch",
    "output_delta",
    "backward",
    "backward_batch",
    "sgd_update",
    "accuracy",
    "evaluate",
    "finite_diff_gradients",
    "max_relative_error",
    "relu_kink_masks",
]
