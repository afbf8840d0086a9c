"""Retrieval-augmented query reformulation for embedding-based zero-shot
text classification: BM25 retrieval over a category-annotated corpus,
category-based query rewriting, and cosine-similarity labeling."""

from .analysis import ENGLISH_STOPWORDS, AnalysisConfig, analyze
from .bpe import ByteLevelBPETokenizer, WhitespaceTokenizer
from .classify import (
    ClassificationResult,
    LabelSet,
    ScoreTable,
    classify_contextual,
    classify_static,
    classify_static_baseline,
    classify_static_baseline_avg,
    run_pipeline,
)
from .corpus import CorpusStats, Document, ingest, word_count
from .embeddings import (
    RemoteEmbedderConfig,
    StaticVectorStore,
    cosine,
    embed_phrase,
    embed_texts_remote,
    embed_word,
    load_static_vectors,
)
from .evalharness import (
    EvalReport,
    LabeledExample,
    SweepReport,
    compare,
    evaluate,
    load_dataset,
    sweep_k,
)
from .reformulate import (
    ExtractorConfig,
    RawQuery,
    SentenceQuery,
    WeightedKeywordQuery,
    extract_keywords,
    make_keyword_query,
    make_sentence_query,
    retrieve_categories,
)
from .retrieval import (
    BM25Params,
    BM25Retriever,
    InvertedIndex,
    RankedArticle,
    bm25_score,
    build_index,
    load_index,
    save_index,
    search,
)

__version__ = "0.1.0"
