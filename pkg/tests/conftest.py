"""Shared fixtures: toy documents, the bundled benchmark, the BPE fixture
tokenizer, and a scripted mock embedding server."""

from __future__ import annotations

import hashlib
import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import numpy as np
import pytest

from qzero.benchmark import write_benchmark
from qzero.bpe import ByteLevelBPETokenizer
from qzero.corpus import Document

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def tokenizer_paths() -> tuple[Path, Path]:
    return FIXTURES / "tokenizer" / "vocab.json", FIXTURES / "tokenizer" / "merges.txt"


@pytest.fixture(scope="session")
def bpe_tokenizer(tokenizer_paths) -> ByteLevelBPETokenizer:
    vocab, merges = tokenizer_paths
    return ByteLevelBPETokenizer.from_files(vocab, merges)


@pytest.fixture(scope="session")
def benchmark_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("benchmark")
    return write_benchmark(out)


@pytest.fixture
def toy_docs() -> list[Document]:
    return [
        Document("d1", "Red Fox", "red fox", ("Foxes", "Mammals")),
        Document("d2", "Red Wine", "red red wine", ("Drinks",)),
        Document("d3", "Blue Sky", "blue sky", ("Weather", "Colors")),
    ]


def deterministic_vector(text: str, dim: int = 6) -> list[float]:
    """Stable pseudo-vector for a text: bytes of its sha256, shifted off zero."""
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return [digest[i] / 255.0 + 0.5 for i in range(dim)]


class MockEmbeddingHandler(BaseHTTPRequestHandler):
    server_version = "MockEmbed/0.1"

    def log_message(self, *args):  # keep test output quiet
        pass

    def do_POST(self):
        cfg = self.server.script
        cfg["requests"] += 1
        if self.path != "/v1/embeddings":
            self.send_error(404)
            return
        if cfg["fail_next"] > 0:
            cfg["fail_next"] -= 1
            self._respond(503, {"error": "temporarily unavailable"})
            return
        if cfg.get("force_400"):
            self._respond(400, {"error": "rejected by script"})
            return
        length = int(self.headers.get("Content-Length", "0"))
        try:
            body = json.loads(self.rfile.read(length))
            texts = body["input"]
            assert isinstance(texts, list) and all(isinstance(t, str) for t in texts)
        except Exception:
            self._respond(400, {"error": "malformed request"})
            return
        if any(t == "" for t in texts):
            self._respond(400, {"error": "empty input text"})
            return
        items = [
            {
                "index": i,
                "embedding": deterministic_vector(t, cfg["dim"]),
                "object": "embedding",
            }
            for i, t in enumerate(texts)
        ]
        if cfg["shuffle"]:
            items = items[::-1]
        self._respond(200, {"object": "list", "data": items, "model": "mock"})

    def _respond(self, status: int, payload: dict):
        data = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


@pytest.fixture
def mock_embedding_server():
    server = ThreadingHTTPServer(("127.0.0.1", 0), MockEmbeddingHandler)
    server.script = {"shuffle": True, "fail_next": 0, "dim": 6, "requests": 0}
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield server
    finally:
        server.shutdown()
        thread.join(timeout=5)


@pytest.fixture
def mock_server_url(mock_embedding_server) -> str:
    host, port = mock_embedding_server.server_address
    return f"http://{host}:{port}"
