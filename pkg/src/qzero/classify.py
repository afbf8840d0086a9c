"""Zero-shot classification over a fixed label set.

Contextual path: cosine similarity between the query embedding and each
label embedding, all obtained from one embedding provider call.

Static path: every keyword's vector is compared to every label vector;
each similarity is multiplied by the keyword's weight and the products
accumulate into per-label scores. Labels that are phrases are embedded
as the mean of their in-vocabulary words. Ties break toward the label
declared first.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from .analysis import split_tokens
from .embeddings import StaticVectorStore, cosine, embed_phrase
from .reformulate import (
    DEFAULT_TOKEN_BUDGET,
    ExtractorConfig,
    NoKeywordsError,
    RawQuery,
    SentenceQuery,
    WeightedKeywordQuery,
    make_keyword_query,
    make_sentence_query,
    retrieve_categories,
)
from .retrieval import DEFAULT_TOP_K, RankedArticle, Retriever

logger = logging.getLogger(__name__)

Embedder = Callable[[list[str]], list[np.ndarray]]

EXPLAIN_MAX_CATEGORIES = 50
EXPLAIN_MAX_KEYWORDS = 10


class EmptyQueryError(ValueError):
    """The reformulated query is empty; classify the raw input instead."""


class NoEmbeddableKeywordsError(ValueError):
    """Every keyword in the weighted query is out of vocabulary."""


class PipelineError(RuntimeError):
    """A pipeline stage failed; carries the stage name."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


class LabelSet:
    """Ordered, distinct candidate class labels. Order is significant:
    it is the tie-break order."""

    def __init__(self, labels: Iterable[str]):
        cleaned = [y.strip() for y in labels]
        if any(not y for y in cleaned):
            raise ValueError("labels must be non-empty")
        if len(set(cleaned)) != len(cleaned):
            raise ValueError("labels must be distinct")
        if len(cleaned) < 2:
            raise ValueError("need at least 2 labels")
        self.labels = tuple(cleaned)

    @classmethod
    def from_file(cls, path: str | Path) -> "LabelSet":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        return cls([ln for ln in lines if ln.strip()])

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label: str) -> bool:
        return label in self.labels


@dataclass(frozen=True)
class ScoreTable:
    """Per-label scores with the winning label and its margin over the
    runner-up."""

    scores: dict[str, float]
    best: str
    margin: float


@dataclass(frozen=True)
class ExplainPayload:
    """Insight attachment: the retrieved categories in rank order and the
    top weighted keywords."""

    categories: tuple[str, ...]
    keywords: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class ClassificationResult:
    predicted: str
    table: ScoreTable
    mode: str  # contextual | static | baseline-contextual | baseline-static
    explain: ExplainPayload | None = None
    oov_keywords: tuple[str, ...] = ()

    def __post_init__(self):
        if self.predicted != self.table.best:
            raise ValueError("predicted label must equal the score-table best")


def _score_table(labels: LabelSet, scores: dict[str, float]) -> ScoreTable:
    best = max(labels.labels, key=lambda y: scores[y])
    # max() returns the first maximal element, which is the declared tie-break.
    others = [scores[y] for y in labels.labels if y != best]
    margin = scores[best] - max(others)
    return ScoreTable(scores=scores, best=best, margin=margin)


def classify_contextual(
    query_text: str,
    labels: LabelSet,
    embedder: Embedder,
    mode: str = "contextual",
    explain: ExplainPayload | None = None,
) -> ClassificationResult:
    """Embed query and labels in one call; pick the label closest in cosine."""
    if not query_text.strip():
        raise EmptyQueryError("query text is empty; classify the raw input instead")
    vectors = embedder([query_text, *labels.labels])
    query_vec = vectors[0]
    scores = {
        y: cosine(query_vec, v) for y, v in zip(labels.labels, vectors[1:])
    }
    table = _score_table(labels, scores)
    return ClassificationResult(
        predicted=table.best, table=table, mode=mode, explain=explain
    )


def _label_vectors(labels: LabelSet, store: StaticVectorStore) -> dict[str, np.ndarray]:
    return {y: embed_phrase(store, y) for y in labels.labels}


def classify_static(
    query: WeightedKeywordQuery,
    labels: LabelSet,
    store: StaticVectorStore,
    mode: str = "static",
    explain: ExplainPayload | None = None,
) -> ClassificationResult:
    """Weighted keyword scoring.

    score(y) = sum over (keyword, weight) of weight * cosine(keyword
    vector, label vector). Out-of-vocabulary keywords contribute 0 and
    are reported in the result; if all are out of vocabulary the call
    fails instead of producing an all-zero table.
    """
    if not query.entries:
        raise ValueError("weighted keyword query is empty")
    label_vecs = _label_vectors(labels, store)
    oov: list[str] = []
    usable: list[tuple[np.ndarray, int]] = []
    for kw, w in query.entries:
        vec = store.get(kw)
        if vec is None:
            oov.append(kw)
        else:
            usable.append((vec, w))
    if not usable:
        raise NoEmbeddableKeywordsError(
            f"none of the {len(query.entries)} keywords are in vocabulary"
        )
    scores: dict[str, float] = {}
    for y in labels.labels:
        y_vec = label_vecs[y]
        total = 0.0
        for vec, w in usable:
            total += w * cosine(vec, y_vec)
        scores[y] = total
    table = _score_table(labels, scores)
    return ClassificationResult(
        predicted=table.best,
        table=table,
        mode=mode,
        explain=explain,
        oov_keywords=tuple(oov),
    )


def classify_static_baseline_avg(
    raw_text: str, labels: LabelSet, store: StaticVectorStore
) -> ClassificationResult:
    """Baseline for static models: cosine between the mean vector of the
    raw input's words and each label vector."""
    words = split_tokens(raw_text)
    if not words:
        raise EmptyQueryError("raw input has no words")
    found = [v for v in (store.get(w) for w in words) if v is not None]
    if not found:
        raise NoEmbeddableKeywordsError("no in-vocabulary words in raw input")
    query_vec = np.mean(found, axis=0)
    label_vecs = _label_vectors(labels, store)
    scores = {y: cosine(query_vec, label_vecs[y]) for y in labels.labels}
    table = _score_table(labels, scores)
    return ClassificationResult(predicted=table.best, table=table, mode="baseline-static")


def classify_static_baseline(
    raw_text: str, labels: LabelSet, store: StaticVectorStore
) -> ClassificationResult:
    """Unit-weight variant of the static baseline: each distinct raw-input
    word scores like a keyword with weight 1."""
    words = list(dict.fromkeys(split_tokens(raw_text)))
    if not words:
        raise EmptyQueryError("raw input has no words")
    query = WeightedKeywordQuery(entries=tuple((w, 1) for w in words))
    return classify_static(query, labels, store, mode="baseline-static")


def _explain_payload(
    articles: list[RankedArticle], keywords: tuple[tuple[str, int], ...]
) -> ExplainPayload:
    cats: list[str] = []
    for article in sorted(articles, key=lambda a: a.rank):
        cats.extend(article.categories)
    return ExplainPayload(
        categories=tuple(cats[:EXPLAIN_MAX_CATEGORIES]),
        keywords=tuple(keywords[:EXPLAIN_MAX_KEYWORDS]),
    )


def run_pipeline(
    raw: RawQuery,
    labels: LabelSet,
    mode: str,
    retriever: Retriever,
    *,
    store: StaticVectorStore | None = None,
    embedder: Embedder | None = None,
    extractor: ExtractorConfig | None = None,
    tokenizer=None,
    budget: int = DEFAULT_TOKEN_BUDGET,
    k: int = DEFAULT_TOP_K,
    explain: bool = False,
) -> ClassificationResult:
    """Retrieve, reformulate, classify.

    mode "sentence" feeds the concatenated categories to the contextual
    classifier (requires `embedder` and `tokenizer`); mode "keywords"
    feeds the weighted keywords to the static classifier (requires
    `store`). Empty retrieval, or a reformulation that comes out empty,
    falls back to the matching baseline over the raw input and the
    result is flagged baseline-*. Other stage failures propagate as
    PipelineError with the stage named.
    """
    if mode not in ("sentence", "keywords"):
        raise ValueError(f"unknown pipeline mode {mode!r}")
    if mode == "sentence" and (embedder is None or tokenizer is None):
        raise ValueError("sentence mode requires an embedder and a tokenizer")
    if mode == "keywords" and store is None:
        raise ValueError("keywords mode requires a static vector store")

    try:
        articles = retrieve_categories(raw, retriever, k)
    except Exception as e:
        raise PipelineError("retrieve", e) from e

    if mode == "sentence":
        if articles:
            try:
                sentence = make_sentence_query(articles, tokenizer, budget)
            except Exception as e:
                raise PipelineError("reformulate", e) from e
        else:
            sentence = SentenceQuery(text="", token_count=0, source_ranks=())
        payload = _explain_payload(articles, ()) if explain else None
        if not sentence.text.strip():
            try:
                result = classify_contextual(
                    raw.text, labels, embedder, mode="baseline-contextual", explain=payload
                )
            except Exception as e:
                raise PipelineError("classify-baseline", e) from e
            return result
        try:
            return classify_contextual(
                sentence.text, labels, embedder, mode="contextual", explain=payload
            )
        except Exception as e:
            raise PipelineError("classify", e) from e

    # keywords mode
    keyword_query: WeightedKeywordQuery | None = None
    if articles:
        try:
            keyword_query = make_keyword_query(articles, extractor)
        except NoKeywordsError:
            keyword_query = None
        except Exception as e:
            raise PipelineError("reformulate", e) from e
    if keyword_query is None:
        try:
            result = classify_static_baseline_avg(raw.text, labels, store)
        except Exception as e:
            raise PipelineError("classify-baseline", e) from e
        if explain:
            result = ClassificationResult(
                predicted=result.predicted,
                table=result.table,
                mode=result.mode,
                explain=_explain_payload(articles, ()),
            )
        return result
    payload = _explain_payload(articles, keyword_query.entries) if explain else None
    try:
        return classify_static(
            keyword_query, labels, store, mode="static", explain=payload
        )
    except Exception as e:
        raise PipelineError("classify", e) from e
