"""Launch the embedding service from the command line."""

from __future__ import annotations

import argparse

import uvicorn

from .app import ServerConfig, create_app


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="embedserver",
        description="Serve sentence embeddings over POST /v1/embeddings.",
    )
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8080)
    parser.add_argument(
        "--model",
        default="sentence-transformers/all-mpnet-base-v2",
        help="model identifier, or hash:<dim> for the built-in "
             "deterministic featurizer (default %(default)s)",
    )
    parser.add_argument("--max-batch-size", type=int, default=64)
    parser.add_argument("--device", default=None, help="device hint, e.g. cpu or cuda")
    args = parser.parse_args(argv)

    config = ServerConfig(
        host=args.host,
        port=args.port,
        model=args.model,
        max_batch_size=args.max_batch_size,
        device=args.device,
    )
    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
