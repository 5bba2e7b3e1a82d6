"""Launch the web service: python -m neurotrace.server [flags].

Flags fall back to NEUROTRACE_* environment variables, then to defaults.
"""

import argparse
import os

import uvicorn

from .app import DEFAULT_MAX_UPLOAD, DEFAULT_SESSION_CAP, DEFAULT_TRACE_CAP, create_app


def main(argv=None):
    env = os.environ
    parser = argparse.ArgumentParser(prog="neurotrace-server")
    parser.add_argument("--host", default=env.get("NEUROTRACE_HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(env.get("NEUROTRACE_PORT", "8080")))
    parser.add_argument(
        "--assets",
        default=env.get("NEUROTRACE_ASSETS"),
        help="directory with the browser UI bundle to serve at /",
    )
    parser.add_argument(
        "--max-upload",
        type=int,
        default=int(env.get("NEUROTRACE_MAX_UPLOAD", str(DEFAULT_MAX_UPLOAD))),
        help="maximum dataset upload size in bytes",
    )
    parser.add_argument(
        "--delay",
        type=float,
        default=float(env.get("NEUROTRACE_DELAY", "0")),
        help="inter-event pacing delay in seconds (the UI animates on top)",
    )
    parser.add_argument(
        "--trace-cap",
        type=int,
        default=int(env.get("NEUROTRACE_TRACE_CAP", str(DEFAULT_TRACE_CAP))),
        help="retained events per session before training is refused",
    )
    parser.add_argument(
        "--session-cap",
        type=int,
        default=int(env.get("NEUROTRACE_SESSION_CAP", str(DEFAULT_SESSION_CAP))),
    )
    args = parser.parse_args(argv)

    app = create_app(
        pacing_delay=args.delay,
        max_upload_bytes=args.max_upload,
        trace_cap=args.trace_cap,
        session_cap=args.session_cap,
        assets_dir=args.assets,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")


if __name__ == "__main__":
    main()
