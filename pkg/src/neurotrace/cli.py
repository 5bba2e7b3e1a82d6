"""Headless command-line driver.

Commands:
    train     run a full training session, dumping the event trace and a
              per-epoch metrics table
    validate  mechanically check a trace file
    inspect   print a dataset summary
    predict   run inference on custom inputs, from a dumped trace or a
              fresh training run

Exit codes: 0 success, 1 trace violation, 2 configuration/arity error,
3 data/parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .data import load_builtin, ingest_csv, split, summarize
from .data.schema import Dataset
from .errors import (
    ConfigError,
    DataError,
    IngestionError,
    InputError,
    NeurotraceError,
    ParseError,
    ShapeError,
)
from .nn.types import NetworkConfig, NetworkParams
from .session import Command, Session, SessionStatus, create_session
from .trace.events import WeightsUpdated
from .trace.wire import read_trace, serialize_event
from .trace.validate import validate_trace

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_DATA = 3


def _load_dataset(source: str) -> Dataset:
    if source in ("iris", "diabetes"):
        return load_builtin(source)
    path = Path(source)
    if not path.exists():
        raise DataError(f"dataset {source!r} is neither a built-in name nor a file")
    return ingest_csv(path.stem, path.read_bytes())


def _parse_hidden(spec: str) -> list[int]:
    spec = spec.strip()
    if spec in ("", "none"):
        return []
    try:
        return [int(part) for part in spec.split(",")]
    except ValueError:
        raise ConfigError(f"--layers expects a comma list of integers, got {spec!r}") from None


def _build_session(args) -> Session:
    dataset = _load_dataset(args.dataset)
    if args.val_fraction > 0:
        dataset = split(dataset, args.val_fraction, args.seed)
    hidden = _parse_hidden(args.layers)
    config = NetworkConfig(
        layer_sizes=(dataset.n_features, *hidden, dataset.output_size),
        activation=args.activation,
        learning_rate=args.lr,
        epochs=args.epochs,
        task=dataset.schema.task,
        seed=args.seed,
    )
    return create_session(dataset, config)


def _metrics_row(epoch: int, metrics) -> str:
    cells = [str(epoch), repr(metrics.loss)]
    for value in (metrics.accuracy, metrics.val_loss, metrics.val_accuracy):
        cells.append("" if value is None else repr(value))
    return ",".join(cells)


def cmd_train(args) -> int:
    session = _build_session(args)
    trace_fh = open(args.out_trace, "w", encoding="utf-8", newline="\n") if args.out_trace else None
    try:
        session.control(Command.PLAY)
        while session.status is SessionStatus.RUNNING:
            event = session.advance()
            if trace_fh is not None:
                trace_fh.write(serialize_event(event))
                trace_fh.write("\n")
    finally:
        if trace_fh is not None:
            trace_fh.close()
    if args.out_metrics:
        with open(args.out_metrics, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("epoch,loss,accuracy,val_loss,val_accuracy\n")
            for epoch, metrics in session.metrics_history:
                fh.write(_metrics_row(epoch, metrics) + "\n")
    final = session.metrics_history[-1][1]
    parts = [f"epochs={session.current_epoch}", f"loss={final.loss:.6f}"]
    if final.accuracy is not None:
        parts.append(f"accuracy={final.accuracy:.4f}")
    if final.val_loss is not None:
        parts.append(f"val_loss={final.val_loss:.6f}")
    if final.val_accuracy is not None:
        parts.append(f"val_accuracy={final.val_accuracy:.4f}")
    print("final: " + " ".join(parts))
    return EXIT_OK


def cmd_validate(args) -> int:
    events = read_trace(args.trace)
    violation = validate_trace(events)
    if violation is None:
        print(f"ok: {len(events)} events")
        return EXIT_OK
    print(str(violation), file=sys.stderr)
    return EXIT_VIOLATION


def cmd_inspect(args) -> int:
    info = summarize(_load_dataset(args.dataset))
    print(f"name: {info['name']}")
    print(f"samples: {info['samples']}")
    print(f"features: {len(info['feature_names'])} ({', '.join(info['feature_names'])})")
    print(f"target: {info['target_name']}")
    print(f"task: {info['task']}")
    if "class_labels" in info:
        print(f"classes: {len(info['class_labels'])} ({', '.join(info['class_labels'])})")
    return EXIT_OK


def _params_from_trace(path: str) -> NetworkParams:
    """Final weights = the last WEIGHTS_UPDATED snapshot per layer."""
    latest: dict[int, WeightsUpdated] = {}
    for event in read_trace(path):
        if isinstance(event, WeightsUpdated):
            latest[event.layer] = event
    if not latest:
        raise DataError(f"trace {path!r} contains no weight updates")
    layers = sorted(latest)
    if layers != list(range(1, len(layers) + 1)):
        raise DataError(f"trace {path!r} is missing updates for some layers")
    return NetworkParams(
        [np.asarray(latest[l].w_post, dtype=np.float64) for l in layers],
        [np.asarray(latest[l].b_post, dtype=np.float64) for l in layers],
    )


def cmd_predict(args) -> int:
    try:
        inputs = [float(v) for v in args.inputs.split(",")]
    except ValueError:
        raise ConfigError(f"--inputs expects a comma list of numbers, got {args.inputs!r}") from None
    if args.trace:
        dataset = _load_dataset(args.dataset)
        params = _params_from_trace(args.trace)
        config = NetworkConfig(
            layer_sizes=params.layer_sizes,
            activation=args.activation,
            learning_rate=args.lr,
            epochs=max(args.epochs, 1),
            task=dataset.schema.task,
            seed=args.seed,
        )
        session = Session(id="predict", config=config, dataset=dataset, params=params)
    else:
        session = _build_session(args)
        session.control(Command.PLAY)
        while session.status is SessionStatus.RUNNING:
            session.advance()
    result = session.predict(inputs)
    print(json.dumps(result))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neurotrace", description="observable feedforward-network training"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_flags(p):
        p.add_argument("--dataset", required=True, help="built-in name (iris, diabetes) or CSV path")
        p.add_argument("--layers", default="8", help="comma list of hidden layer sizes ('' for none)")
        p.add_argument("--activation", default="sigmoid", choices=["sigmoid", "relu"])
        p.add_argument("--lr", type=float, default=0.5)
        p.add_argument("--epochs", type=int, default=100)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--val-fraction", type=float, default=0.0, dest="val_fraction")

    p_train = sub.add_parser("train", help="run a training session headlessly")
    add_run_flags(p_train)
    p_train.add_argument("--out-trace", dest="out_trace", help="write the event trace here")
    p_train.add_argument("--out-metrics", dest="out_metrics", help="write the per-epoch metrics CSV here")
    p_train.set_defaults(fn=cmd_train)

    p_val = sub.add_parser("validate", help="check a dumped trace file")
    p_val.add_argument("trace", help="path to a trace file")
    p_val.set_defaults(fn=cmd_validate)

    p_ins = sub.add_parser("inspect", help="print a dataset summary")
    p_ins.add_argument("dataset", help="built-in name or CSV path")
    p_ins.set_defaults(fn=cmd_inspect)

    p_pred = sub.add_parser("predict", help="run inference on custom inputs")
    add_run_flags(p_pred)
    p_pred.add_argument("--inputs", required=True, help="comma list of raw feature values")
    p_pred.add_argument("--trace", help="reuse the final weights of a dumped trace instead of training")
    p_pred.set_defaults(fn=cmd_predict)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, ShapeError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ParseError as exc:
        location = f" (line {exc.line_number})" if exc.line_number else ""
        print(f"error: {exc}{location}", file=sys.stderr)
        return EXIT_DATA
    except (IngestionError, DataError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NeurotraceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
