"""BM25 retrieval over an inverted index of category-annotated documents.

An index is built once from a document stream and persisted as a
directory: `manifest.json` (format version, document count, average
length, analysis settings, BM25 parameters), `postings.jsonl` (one term
per line, postings sorted by doc_id), and `documents.jsonl` (per-document
length and categories). The layout is deterministic: rebuilding from the
same corpus yields byte-identical files.

Scoring uses Okapi tf saturation with the non-negative idf
ln(1 + (N - df + 0.5) / (df + 0.5)); defaults k1=1.2, b=0.75.
"""

from __future__ import annotations

import json
import math
import os
import shutil
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Protocol

from .analysis import AnalysisConfig, analyze
from .corpus import Document

FORMAT_VERSION = 1
DEFAULT_TOP_K = 50

_MANIFEST = "manifest.json"
_POSTINGS = "postings.jsonl"
_DOCUMENTS = "documents.jsonl"


class InvertedIndexError(RuntimeError):
    """Index cannot be built, stored, or served."""


class ConfigMismatchError(InvertedIndexError):
    """Requested analysis settings differ from the ones the index was built with."""


@dataclass(frozen=True)
class BM25Params:
    k1: float = 1.2
    b: float = 0.75


@dataclass(frozen=True)
class RankedArticle:
    """One retrieval hit: rank 1 is the best match; categories come back
    in the order they were stored with the document."""

    doc_id: str
    score: float
    rank: int
    categories: tuple[str, ...]


class InvertedIndex:
    """Immutable term -> postings structure plus per-document metadata."""

    def __init__(
        self,
        postings: dict[str, list[tuple[str, int]]],
        doc_lengths: dict[str, int],
        doc_categories: dict[str, tuple[str, ...]],
        analysis: AnalysisConfig,
        params: BM25Params,
    ):
        if not doc_lengths:
            raise InvertedIndexError("index must contain at least one document")
        self.postings = postings
        self.doc_lengths = doc_lengths
        self.doc_categories = doc_categories
        self.analysis = analysis
        self.params = params
        self.n_docs = len(doc_lengths)
        self.avgdl = sum(doc_lengths.values()) / self.n_docs

    def validate(self) -> None:
        for term, plist in self.postings.items():
            ids = [d for d, _ in plist]
            if ids != sorted(ids):
                raise InvertedIndexError(f"postings for {term!r} not sorted by doc_id")
            for doc_id, tf in plist:
                if tf < 1:
                    raise InvertedIndexError(f"non-positive tf for {term!r}/{doc_id!r}")
                if doc_id not in self.doc_lengths or doc_id not in self.doc_categories:
                    raise InvertedIndexError(f"posting references unknown doc {doc_id!r}")


def build_index(
    docs: Iterable[Document],
    analysis: AnalysisConfig | None = None,
    params: BM25Params | None = None,
) -> InvertedIndex:
    """Construct an in-memory index from a document stream.

    Raises InvertedIndexError on an empty stream or duplicate doc ids.
    """
    analysis = analysis or AnalysisConfig()
    params = params or BM25Params()
    postings: dict[str, dict[str, int]] = {}
    doc_lengths: dict[str, int] = {}
    doc_categories: dict[str, tuple[str, ...]] = {}
    for doc in docs:
        if doc.doc_id in doc_lengths:
            raise InvertedIndexError(f"duplicate doc_id {doc.doc_id!r} in index build")
        tokens = analyze(doc.content, analysis)
        doc_lengths[doc.doc_id] = len(tokens)
        doc_categories[doc.doc_id] = tuple(doc.categories)
        for t in tokens:
            by_doc = postings.setdefault(t, {})
            by_doc[doc.doc_id] = by_doc.get(doc.doc_id, 0) + 1
    if not doc_lengths:
        raise InvertedIndexError("empty corpus: no documents to index")
    sorted_postings = {
        term: sorted(by_doc.items()) for term, by_doc in postings.items()
    }
    return InvertedIndex(sorted_postings, doc_lengths, doc_categories, analysis, params)


def bm25_score(
    tf: int,
    df: int,
    dl: int,
    index: InvertedIndex,
    params: BM25Params | None = None,
) -> float:
    """Score one term occurrence profile against one document.

    Requires tf >= 1, 1 <= df <= N, dl >= 1. Always non-negative.
    """
    params = params or index.params
    if tf < 1:
        raise ValueError(f"tf must be >= 1, got {tf}")
    if not 1 <= df <= index.n_docs:
        raise ValueError(f"df must be in [1, {index.n_docs}], got {df}")
    if dl < 1:
        raise ValueError(f"dl must be >= 1, got {dl}")
    if index.avgdl <= 0:
        raise ValueError("index average document length must be positive")
    return _score_term(tf, df, dl, index.n_docs, index.avgdl, params.k1, params.b)


def _score_term(tf: int, df: int, dl: int, n: int, avgdl: float, k1: float, b: float) -> float:
    idf = math.log(1.0 + (n - df + 0.5) / (df + 0.5))
    return idf * tf * (k1 + 1.0) / (tf + k1 * (1.0 - b + b * dl / avgdl))


def search(
    index: InvertedIndex,
    query: str,
    k: int = DEFAULT_TOP_K,
    params: BM25Params | None = None,
) -> list[RankedArticle]:
    """Top-k documents by summed per-term BM25 score.

    Repeated query tokens contribute once per occurrence. Terms absent
    from the index contribute nothing. Only documents scoring > 0 are
    returned; ties break by ascending doc_id.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    params = params or index.params
    tokens = analyze(query, index.analysis)
    scores: dict[str, float] = {}
    for t in tokens:
        plist = index.postings.get(t)
        if not plist:
            continue
        df = len(plist)
        for doc_id, tf in plist:
            s = _score_term(
                tf, df, index.doc_lengths[doc_id],
                index.n_docs, index.avgdl, params.k1, params.b,
            )
            scores[doc_id] = scores.get(doc_id, 0.0) + s
    ranked = sorted(
        ((d, s) for d, s in scores.items() if s > 0.0),
        key=lambda kv: (-kv[1], kv[0]),
    )[:k]
    return [
        RankedArticle(doc_id=d, score=s, rank=i + 1, categories=index.doc_categories[d])
        for i, (d, s) in enumerate(ranked)
    ]


def save_index(index: InvertedIndex, path: str | Path) -> None:
    """Persist atomically: files are staged in a sibling directory and
    swapped in only when complete, so a partially written index is never
    visible at `path`."""
    path = Path(path)
    staging = path.with_name(path.name + ".staging")
    if staging.exists():
        shutil.rmtree(staging)
    try:
        staging.mkdir(parents=True)
        manifest = {
            "format_version": FORMAT_VERSION,
            "n_docs": index.n_docs,
            "avgdl": index.avgdl,
            "analysis": index.analysis.to_manifest(),
            "bm25": {"k1": index.params.k1, "b": index.params.b},
        }
        (staging / _MANIFEST).write_text(
            json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
        with open(staging / _POSTINGS, "w", encoding="utf-8") as f:
            for term in sorted(index.postings):
                plist = [[d, tf] for d, tf in index.postings[term]]
                f.write(json.dumps([term, plist], ensure_ascii=False) + "\n")
        with open(staging / _DOCUMENTS, "w", encoding="utf-8") as f:
            for doc_id in sorted(index.doc_lengths):
                rec = {
                    "id": doc_id,
                    "length": index.doc_lengths[doc_id],
                    "categories": list(index.doc_categories[doc_id]),
                }
                f.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")
        if path.exists():
            shutil.rmtree(path)
        os.rename(staging, path)
    except Exception:
        if staging.exists():
            shutil.rmtree(staging, ignore_errors=True)
        raise


def load_index(
    path: str | Path,
    expected_analysis: AnalysisConfig | None = None,
) -> InvertedIndex:
    """Load a persisted index.

    When `expected_analysis` is given and differs from the manifest, the
    index refuses to serve (ConfigMismatchError): silently analyzing
    queries differently from documents is the failure mode this guards.
    """
    path = Path(path)
    manifest_path = path / _MANIFEST
    if not manifest_path.exists():
        raise InvertedIndexError(f"no index manifest at {manifest_path}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    if manifest.get("format_version") != FORMAT_VERSION:
        raise InvertedIndexError(
            f"unsupported index format version {manifest.get('format_version')!r}"
        )
    analysis = AnalysisConfig.from_manifest(manifest["analysis"])
    if expected_analysis is not None and expected_analysis != analysis:
        raise ConfigMismatchError(
            "index was built with different analysis settings; "
            "rebuild the index or match its configuration"
        )
    params = BM25Params(k1=manifest["bm25"]["k1"], b=manifest["bm25"]["b"])
    postings: dict[str, list[tuple[str, int]]] = {}
    with open(path / _POSTINGS, encoding="utf-8") as f:
        for line in f:
            term, plist = json.loads(line)
            postings[term] = [(d, tf) for d, tf in plist]
    doc_lengths: dict[str, int] = {}
    doc_categories: dict[str, tuple[str, ...]] = {}
    with open(path / _DOCUMENTS, encoding="utf-8") as f:
        for line in f:
            rec = json.loads(line)
            doc_lengths[rec["id"]] = rec["length"]
            doc_categories[rec["id"]] = tuple(rec["categories"])
    index = InvertedIndex(postings, doc_lengths, doc_categories, analysis, params)
    if index.n_docs != manifest["n_docs"] or index.avgdl != manifest["avgdl"]:
        raise InvertedIndexError("index data files disagree with manifest")
    index.validate()
    return index


class Retriever(Protocol):
    """Anything that can answer a query with ranked, category-carrying hits."""

    def search(self, query: str, k: int = DEFAULT_TOP_K) -> list[RankedArticle]:
        ...


class BM25Retriever:
    """Retriever over a built (or loaded) inverted index."""

    def __init__(self, index: InvertedIndex, params: BM25Params | None = None):
        self.index = index
        self.params = params or index.params

    @classmethod
    def open(cls, path: str | Path) -> "BM25Retriever":
        return cls(load_index(path))

    def search(self, query: str, k: int = DEFAULT_TOP_K) -> list[RankedArticle]:
        return search(self.index, query, k, self.params)
