"""Query reformulation from retrieved article categories.

Two output forms:

* sentence form: all categories of the retrieved articles, concatenated
  in article-rank order with single spaces, duplicates retained, cut to
  a token budget (default 512) for contextual embedding models;
* weighted-keyword form: keywords extracted from the same rank-ordered
  category list, each paired with its exact occurrence count, for static
  word embedding models. No token budget applies here.
"""

from __future__ import annotations

import logging
import string
import subprocess
from collections import Counter
from dataclasses import dataclass, field

from .analysis import ENGLISH_STOPWORDS, split_tokens
from .bpe import Tokenizer
from .retrieval import DEFAULT_TOP_K, RankedArticle, Retriever

logger = logging.getLogger(__name__)

DEFAULT_TOKEN_BUDGET = 512

EXTRACTOR_STRATEGIES = ("capitalization", "nounlite", "external")

_STRIP_CHARS = string.punctuation + string.whitespace


class NoKeywordsError(ValueError):
    """Keyword extraction produced nothing usable."""


class ExternalExtractorError(RuntimeError):
    """The configured external extractor command failed."""


@dataclass(frozen=True)
class RawQuery:
    """The original input text."""

    text: str

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("query text must be non-empty")


@dataclass(frozen=True)
class SentenceQuery:
    """Concatenated-category reformulation.

    source_ranks maps each category that contributed at least one token
    of the emitted text to the rank of the article it came from.
    """

    text: str
    token_count: int
    source_ranks: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class WeightedKeywordQuery:
    """Keyword/weight reformulation; entries sorted by weight descending,
    then keyword ascending. Weights are exact occurrence counts."""

    entries: tuple[tuple[str, int], ...]

    def __post_init__(self):
        seen = set()
        for kw, w in self.entries:
            if kw in seen:
                raise ValueError(f"duplicate keyword {kw!r}")
            if w < 1:
                raise ValueError(f"non-positive weight for {kw!r}")
            seen.add(kw)


@dataclass(frozen=True)
class ExtractorConfig:
    """Keyword extraction settings.

    strategy:
      capitalization -- tokens starting with an uppercase letter at a
        non-initial position in their category string (category names
        are title-initial-capitalized, so position 0 is uninformative);
      nounlite -- lowercased alphanumeric tokens of length >= 2 minus
        stopwords, a model-free stand-in for noun tagging on the
        noun-heavy category strings;
      external -- spawn a command, feed it categories one per line,
        read "keyword<TAB>count" lines back (hook for POS taggers or
        domain annotators).
    """

    strategy: str = "nounlite"
    stopword_list: frozenset[str] = field(default=ENGLISH_STOPWORDS)
    external_command: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.strategy not in EXTRACTOR_STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if (self.external_command is not None) != (self.strategy == "external"):
            raise ValueError("external_command must be set iff strategy is 'external'")


def retrieve_categories(
    query: RawQuery, retriever: Retriever, k: int = DEFAULT_TOP_K
) -> list[RankedArticle]:
    """Fetch the top-k articles (default 50) with their categories."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return retriever.search(query.text, k)


def _rank_ordered_categories(articles: list[RankedArticle]) -> list[tuple[str, int]]:
    out: list[tuple[str, int]] = []
    for article in sorted(articles, key=lambda a: a.rank):
        for cat in article.categories:
            out.append((cat, article.rank))
    return out


def make_sentence_query(
    articles: list[RankedArticle],
    tokenizer: Tokenizer,
    budget: int = DEFAULT_TOKEN_BUDGET,
) -> SentenceQuery:
    """Concatenate categories in rank order and cut at the token budget.

    Duplicate categories are kept on purpose: repetition carries weight.
    The cut is strictly at a token boundary, which may fall mid-category;
    a partially included category still appears in source_ranks.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    seq = [(cat, rank) for cat, rank in _rank_ordered_categories(articles) if cat.strip()]
    if not seq:
        return SentenceQuery(text="", token_count=0, source_ranks=())

    kept_tokens: list = []
    included: list[tuple[str, int]] = []
    for i, (cat, rank) in enumerate(seq):
        part = cat if i == 0 else " " + cat
        part_tokens = tokenizer.encode(part)
        room = budget - len(kept_tokens)
        if room <= 0:
            break
        kept_tokens.extend(part_tokens[:room])
        included.append((cat, rank))
        if len(part_tokens) > room:
            break
    text = tokenizer.decode(kept_tokens)
    return SentenceQuery(
        text=text, token_count=len(kept_tokens), source_ranks=tuple(included)
    )


def _extract_capitalization(categories: list[str]) -> Counter:
    counts: Counter = Counter()
    for cat in categories:
        for pos, token in enumerate(cat.split()):
            cleaned = token.strip(_STRIP_CHARS)
            if pos > 0 and cleaned and cleaned[0].isupper():
                counts[cleaned] += 1
    return counts


def _extract_nounlite(categories: list[str], stopwords: frozenset[str]) -> Counter:
    counts: Counter = Counter()
    for cat in categories:
        for token in split_tokens(cat):
            if len(token) >= 2 and token not in stopwords:
                counts[token] += 1
    return counts


def _extract_external(categories: list[str], command: tuple[str, ...]) -> Counter:
    payload = "\n".join(categories) + "\n"
    try:
        proc = subprocess.run(
            list(command), input=payload, capture_output=True, text=True, check=False
        )
    except OSError as e:
        raise ExternalExtractorError(f"cannot run {command!r}: {e}") from e
    if proc.returncode != 0:
        raise ExternalExtractorError(
            f"extractor {command!r} exited {proc.returncode}: {proc.stderr.strip()}"
        )
    counts: Counter = Counter()
    for line_no, line in enumerate(proc.stdout.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ExternalExtractorError(
                f"extractor output line {line_no}: expected 'keyword<TAB>count', got {line!r}"
            )
        try:
            n = int(parts[1])
        except ValueError:
            raise ExternalExtractorError(
                f"extractor output line {line_no}: bad count {parts[1]!r}"
            ) from None
        if n > 0 and parts[0]:
            counts[parts[0]] += n
    return counts


def extract_keywords(
    categories: list[str], config: ExtractorConfig | None = None
) -> list[tuple[str, int]]:
    """Count keywords over the category strings under the configured strategy.

    Returns (keyword, count) pairs sorted by count descending, then
    keyword ascending.
    """
    config = config or ExtractorConfig()
    if config.strategy == "capitalization":
        counts = _extract_capitalization(categories)
    elif config.strategy == "nounlite":
        counts = _extract_nounlite(categories, config.stopword_list)
    else:
        counts = _extract_external(categories, config.external_command)
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))


def make_keyword_query(
    articles: list[RankedArticle], config: ExtractorConfig | None = None
) -> WeightedKeywordQuery:
    """Build the weighted-keyword reformulation over all retrieved categories.

    No token budget applies; the budget constraint exists only for
    contextual models. Raises NoKeywordsError when extraction yields
    nothing (callers may fall back to classifying the raw input).
    """
    categories = [cat for cat, _ in _rank_ordered_categories(articles)]
    entries = extract_keywords(categories, config)
    if not entries:
        raise NoKeywordsError("no keywords extracted from retrieved categories")
    return WeightedKeywordQuery(entries=tuple(entries))
