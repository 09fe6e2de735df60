"""Server entry point: load one model, serve the wire protocol."""

from __future__ import annotations

import argparse

import uvicorn

from .app import DEFAULT_MAX_BATCH, create_app
from .engine import ModelEngine


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xaibench-server",
        description="Serve tokenize/predict/gradients for one sequence classifier.",
    )
    parser.add_argument(
        "--model", required=True, help="Hugging Face hub name or local checkpoint path"
    )
    parser.add_argument("--port", type=int, default=8080)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--device", default="cpu", help="cpu, cuda, cuda:0, ...")
    parser.add_argument("--max-batch", type=int, default=DEFAULT_MAX_BATCH)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    engine = ModelEngine(args.model, device=args.device)
    app = create_app(engine, max_batch=args.max_batch)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
