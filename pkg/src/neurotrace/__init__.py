"""neurotrace: observable feedforward-network training.

Each training epoch runs as an explicit, totally ordered event sequence
(forward pulses, activations, loss, backward pulses, per-layer weight
updates with pre/post states) that can be validated, replayed, streamed
to browsers, and dumped from the CLI.
"""

__version__ = "0.1.0"
