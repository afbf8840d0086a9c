"""Embedding providers and similarity.

Two providers: a static word-vector store loaded from the usual
word-vector text format (optional "<count> <dim>" header line, then
"<word> <v1> ... <vdim>" per line), and an HTTP client for a remote
embedding service speaking the `/v1/embeddings` protocol.

A missing word is reported as absent, never as a zero vector: zero
vectors poison cosine similarity silently.
"""

from __future__ import annotations

import concurrent.futures
import logging
import string
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import requests

logger = logging.getLogger(__name__)

_PUNCT_ONLY = frozenset(string.punctuation)

_REQUEST_BATCH = 128
_MAX_ATTEMPTS = 3
_BACKOFF_BASE = 0.2


class VectorFormatError(ValueError):
    """Vector file cannot be parsed consistently."""


class OutOfVocabularyError(ValueError):
    """No constituent of the input is in the vector store."""


class RemoteEmbeddingError(RuntimeError):
    """Remote embedding request failed or returned an invalid payload."""


class StaticVectorStore:
    """Immutable word -> vector table with two-step lookup: exact match
    first, then case-folded (lowercase files and cased files both work)."""

    def __init__(self, dim: int, table: dict[str, np.ndarray]):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim
        self._table = table
        self._folded: dict[str, np.ndarray] = {}
        for word, vec in table.items():
            self._folded.setdefault(word.casefold(), vec)

    def __len__(self) -> int:
        return len(self._table)

    def __contains__(self, word: str) -> bool:
        return self.get(word) is not None

    def get(self, word: str) -> np.ndarray | None:
        vec = self._table.get(word)
        if vec is not None:
            return vec
        return self._folded.get(word.casefold())


def _looks_like_header(parts: list[str]) -> bool:
    if len(parts) != 2:
        return False
    try:
        int(parts[0]), int(parts[1])
    except ValueError:
        return False
    return True


def load_static_vectors(path: str | Path) -> StaticVectorStore:
    """Load a word-vector text file.

    Duplicate words keep the first occurrence (warned). Dimension
    mismatches and unparseable values are fatal, with the line number.
    """
    table: dict[str, np.ndarray] = {}
    dim: int | None = None
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split()
            if line_no == 1 and _looks_like_header(parts):
                continue
            word, values = parts[0], parts[1:]
            if dim is None:
                dim = len(values)
                if dim == 0:
                    raise VectorFormatError(f"line {line_no}: no vector values")
            elif len(values) != dim:
                raise VectorFormatError(
                    f"line {line_no}: expected {dim} values, got {len(values)}"
                )
            try:
                vec = np.array([float(v) for v in values], dtype=np.float64)
            except ValueError as e:
                raise VectorFormatError(f"line {line_no}: {e}") from None
            if not np.all(np.isfinite(vec)):
                raise VectorFormatError(f"line {line_no}: non-finite value")
            if word in table:
                logger.warning("line %d: duplicate word %r, keeping first", line_no, word)
                continue
            table[word] = vec
    if dim is None:
        raise VectorFormatError(f"{path}: no vectors found")
    return StaticVectorStore(dim=dim, table=table)


def embed_word(store: StaticVectorStore, word: str) -> np.ndarray | None:
    """Vector for `word` under the store's lookup normalization, or None."""
    return store.get(word)


def embed_phrase(store: StaticVectorStore, phrase: str) -> np.ndarray:
    """Mean vector of the phrase's in-vocabulary words.

    Connector "&" and punctuation-only tokens are dropped; all other
    words, stopwords included, participate. Out-of-vocabulary words are
    skipped with a log note; if nothing remains, raises
    OutOfVocabularyError naming the phrase.
    """
    if not phrase.strip():
        raise ValueError("phrase must be non-empty")
    words = [w for w in phrase.split() if not set(w) <= _PUNCT_ONLY]
    found: list[np.ndarray] = []
    for w in words:
        vec = store.get(w)
        if vec is None:
            logger.info("phrase %r: word %r not in vocabulary", phrase, w)
        else:
            found.append(vec)
    if not found:
        raise OutOfVocabularyError(f"no in-vocabulary words in phrase {phrase!r}")
    return np.mean(found, axis=0)


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity; requires equal dimensions and non-zero norms."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ValueError("cosine undefined for zero vectors")
    return float(np.dot(a, b) / (na * nb))


@dataclass(frozen=True)
class RemoteEmbedderConfig:
    """Settings for the HTTP embedding provider."""

    base_url: str
    model_name: str
    timeout: float = 30.0
    max_in_flight: int = 4
    auth_token: str | None = None

    def __post_init__(self):
        if self.max_in_flight < 1:
            raise ValueError("max_in_flight must be >= 1")


def _post_embeddings(config: RemoteEmbedderConfig, batch: list[str]) -> list[np.ndarray]:
    url = config.base_url.rstrip("/") + "/v1/embeddings"
    headers = {}
    if config.auth_token:
        headers["Authorization"] = f"Bearer {config.auth_token}"
    body = {"model": config.model_name, "input": batch}
    last_error: Exception | None = None
    for attempt in range(_MAX_ATTEMPTS):
        if attempt:
            time.sleep(_BACKOFF_BASE * (2 ** (attempt - 1)))
        try:
            resp = requests.post(url, json=body, headers=headers, timeout=config.timeout)
        except requests.RequestException as e:
            last_error = e
            continue
        if 400 <= resp.status_code < 500:
            raise RemoteEmbeddingError(
                f"server rejected request ({resp.status_code}): {resp.text[:500]}"
            )
        if resp.status_code != 200:
            last_error = RemoteEmbeddingError(
                f"server error ({resp.status_code}): {resp.text[:500]}"
            )
            continue
        return _parse_embedding_response(resp.json(), len(batch))
    raise RemoteEmbeddingError(
        f"request failed after {_MAX_ATTEMPTS} attempts: {last_error}"
    )


def _parse_embedding_response(payload: dict, n: int) -> list[np.ndarray]:
    data = payload.get("data")
    if not isinstance(data, list) or len(data) != n:
        raise RemoteEmbeddingError(
            f"expected {n} embeddings, got {len(data) if isinstance(data, list) else payload!r}"
        )
    out: list[np.ndarray | None] = [None] * n
    for item in data:
        idx = item.get("index")
        emb = item.get("embedding")
        if not isinstance(idx, int) or not 0 <= idx < n or not isinstance(emb, list):
            raise RemoteEmbeddingError(f"malformed embedding item: {item!r}")
        if out[idx] is not None:
            raise RemoteEmbeddingError(f"duplicate index {idx} in response")
        out[idx] = np.array(emb, dtype=np.float64)
    vectors = [v for v in out if v is not None]
    if len(vectors) != n:
        raise RemoteEmbeddingError("response indexes do not cover all inputs")
    dims = {v.shape[0] for v in vectors}
    if len(dims) != 1:
        raise RemoteEmbeddingError(f"inconsistent embedding dimensions: {sorted(dims)}")
    return vectors


def embed_texts_remote(
    config: RemoteEmbedderConfig, texts: list[str]
) -> list[np.ndarray]:
    """Embed texts over HTTP: one vector per input, in input order.

    Inputs are validated up front (no empty strings), requests are
    batched, up to max_in_flight batches run concurrently, and the
    response `index` fields restore input order regardless of the order
    the server returned items in. Transient transport failures retry
    with exponential backoff; protocol (4xx) errors do not.
    """
    if not texts:
        raise ValueError("texts must be non-empty")
    for i, t in enumerate(texts):
        if t == "":
            raise ValueError(f"texts[{i}] is empty")
    batches = [texts[i : i + _REQUEST_BATCH] for i in range(0, len(texts), _REQUEST_BATCH)]
    if len(batches) == 1:
        results = [_post_embeddings(config, batches[0])]
    else:
        workers = min(config.max_in_flight, len(batches))
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda b: _post_embeddings(config, b), batches))
    vectors = [v for batch in results for v in batch]
    dims = {v.shape[0] for v in vectors}
    if len(dims) != 1:
        raise RemoteEmbeddingError(f"inconsistent dimensions across batches: {sorted(dims)}")
    return vectors
