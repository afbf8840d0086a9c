"""Embedding model backends.

Two kinds are served behind one interface:

* ``hash:<dim>`` -- a dependency-free deterministic model: each
  whitespace token maps to a fixed pseudo-random unit vector (seeded by
  the token's digest) and the text embedding is their normalized mean.
  Useful for offline operation and protocol testing; not semantically
  meaningful.
* any other identifier -- loaded with sentence-transformers
  (``sentence-transformers/all-mpnet-base-v2`` is the documented
  default), run in inference mode so identical inputs give identical
  vectors.

Every backend reports a max input length in tokens; longer inputs are
truncated server-side and the response carries a warning.
"""

from __future__ import annotations

import hashlib

import numpy as np


class ModelLoadError(RuntimeError):
    """The configured model could not be loaded."""


class HashedBagOfWordsModel:
    """Deterministic featurizer: sha256-seeded token vectors, averaged."""

    def __init__(self, dim: int, max_tokens: int = 256):
        if dim < 1:
            raise ModelLoadError(f"hash model dim must be >= 1, got {dim}")
        self.dim = dim
        self.max_tokens = max_tokens
        self._token_cache: dict[str, np.ndarray] = {}

    def _token_vector(self, token: str) -> np.ndarray:
        vec = self._token_cache.get(token)
        if vec is None:
            digest = hashlib.sha256(token.encode("utf-8")).digest()
            seed = int.from_bytes(digest[:8], "big")
            rng = np.random.default_rng(seed)
            vec = rng.standard_normal(self.dim)
            vec /= np.linalg.norm(vec)
            self._token_cache[token] = vec
        return vec

    def encode(self, texts: list[str]) -> tuple[np.ndarray, list[int]]:
        """Returns (embeddings, indexes of truncated inputs)."""
        out = np.zeros((len(texts), self.dim), dtype=np.float64)
        truncated: list[int] = []
        for i, text in enumerate(texts):
            tokens = text.split()
            if len(tokens) > self.max_tokens:
                tokens = tokens[: self.max_tokens]
                truncated.append(i)
            if not tokens:
                tokens = [text]
            mean = np.mean([self._token_vector(t) for t in tokens], axis=0)
            norm = np.linalg.norm(mean)
            out[i] = mean / norm if norm > 0 else self._token_vector(text)
        return out, truncated


class SentenceTransformerModel:
    """Wrapper over a locally available sentence-transformers model."""

    def __init__(self, name: str, device: str | None = None):
        try:
            from sentence_transformers import SentenceTransformer
        except ImportError as e:
            raise ModelLoadError(
                "sentence-transformers is not installed; install the "
                "'transformer' extra or use a hash:<dim> model"
            ) from e
        try:
            self._model = SentenceTransformer(name, device=device)
        except Exception as e:
            raise ModelLoadError(f"cannot load model {name!r}: {e}") from e
        self.max_tokens = int(getattr(self._model, "max_seq_length", 512) or 512)
        self.dim = int(self._model.get_sentence_embedding_dimension())

    def encode(self, texts: list[str]) -> tuple[np.ndarray, list[int]]:
        # the underlying tokenizer truncates; report which inputs exceeded
        truncated = [
            i for i, t in enumerate(texts) if len(t.split()) > self.max_tokens
        ]
        vectors = self._model.encode(
            texts, convert_to_numpy=True, show_progress_bar=False
        )
        return np.asarray(vectors, dtype=np.float64), truncated


def load_model(identifier: str, device: str | None = None):
    """Resolve a model identifier to a backend instance."""
    if identifier.startswith("hash:"):
        try:
            dim = int(identifier.split(":", 1)[1])
        except ValueError:
            raise ModelLoadError(f"bad hash model spec {identifier!r}") from None
        return HashedBagOfWordsModel(dim)
    return SentenceTransformerModel(identifier, device=device)
