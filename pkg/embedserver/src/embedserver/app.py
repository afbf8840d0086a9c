"""HTTP service exposing sentence embeddings.

One endpoint: POST /v1/embeddings with body
``{"model": "<name>", "input": ["<text>", ...]}`` returning
``{"data": [{"index": i, "embedding": [...]}, ...]}`` with zero-based
indexes in input order. The serving model is fixed at startup; the
request's model field is echoed back but does not switch models.

Oversize batches are split internally (never rejected for size alone);
inputs longer than the model's max length are truncated with a warning
listed in the response.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .models import ModelLoadError, load_model

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ServerConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    model: str = "sentence-transformers/all-mpnet-base-v2"
    max_batch_size: int = 64
    device: str | None = None

    def __post_init__(self):
        if self.max_batch_size < 1:
            raise ValueError("max_batch_size must be >= 1")


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"message": message}})


def create_app(config: ServerConfig) -> FastAPI:
    app = FastAPI(title="embedserver")
    state = {"model": None, "load_error": None}
    lock = threading.Lock()

    def get_model():
        with lock:
            if state["load_error"] is not None:
                raise state["load_error"]
            if state["model"] is None:
                try:
                    state["model"] = load_model(config.model, device=config.device)
                except ModelLoadError as e:
                    state["load_error"] = e
                    raise
            return state["model"]

    @app.post("/v1/embeddings")
    async def embeddings(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body is not valid JSON")
        if not isinstance(body, dict):
            return _error(400, "request body must be a JSON object")
        texts = body.get("input")
        if isinstance(texts, str):
            texts = [texts]
        if not isinstance(texts, list) or not texts:
            return _error(400, "'input' must be a non-empty list of strings")
        for i, t in enumerate(texts):
            if not isinstance(t, str):
                return _error(400, f"input[{i}] is not a string")
            if t == "":
                return _error(400, f"input[{i}] is empty")

        try:
            model = get_model()
        except ModelLoadError as e:
            return _error(500, str(e))

        data = []
        warnings: list[str] = []
        for start in range(0, len(texts), config.max_batch_size):
            chunk = texts[start : start + config.max_batch_size]
            vectors, truncated = model.encode(chunk)
            for offset, vec in enumerate(vectors):
                data.append(
                    {
                        "object": "embedding",
                        "index": start + offset,
                        "embedding": vec.tolist(),
                    }
                )
            warnings.extend(
                f"input[{start + i}] truncated to {model.max_tokens} tokens"
                for i in truncated
            )

        payload = {
            "object": "list",
            "model": body.get("model") or config.model,
            "data": data,
        }
        if warnings:
            payload["warnings"] = warnings
        return JSONResponse(payload)

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok", "model": config.model}

    return app
