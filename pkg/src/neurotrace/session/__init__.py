from .equations import NeuronEquation, all_equations, neuron_equation, parse_rendered, render_equation
from .machine import (
    MAX_EPOCHS,
    MAX_HIDDEN_LAYERS,
    MAX_LEARNING_RATE,
    MAX_NEURONS_PER_LAYER,
    TRANSITIONS,
    Command,
    Session,
    SessionStatus,
    create_session,
    validate_config,
)

__all__ = [
    "Session",
    "SessionStatus",
    "Command",
    "TRANSITIONS",
    "create_session",
    "validate_config",
    "NeuronEquation",
    "neuron_equation",
    "all_equations",
    "render_equation",
    "parse_rendered",
    "MAX_HIDDEN_LAYERS",
    "MAX_NEURONS_PER_LAYER",
    "MAX_LEARNING_RATE",
    "MAX_EPOCHS",
]
