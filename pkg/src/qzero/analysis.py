"""Text analysis shared by index construction and query processing.

The chain is: Unicode lowercase, split on non-alphanumeric runs, drop
stopwords (optional), Porter-stem (optional, off by default). The same
function must be applied at index time and query time; the index
manifest records the settings so a mismatch can be refused.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import porter

# Compact bundled English stopword list (the classic 33-word analyzer default).
ENGLISH_STOPWORDS = frozenset(
    """
    a an and are as at be but by for if in into is it no not of on or such
    that the their then there these they this to was will with
    """.split()
)

# Maximal runs of Unicode alphanumerics; underscore is a separator here.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class AnalysisConfig:
    """Analysis settings; persisted in the index manifest."""

    remove_stopwords: bool = True
    stem: bool = False
    stopwords: frozenset[str] = field(default=ENGLISH_STOPWORDS)

    def to_manifest(self) -> dict:
        return {
            "remove_stopwords": self.remove_stopwords,
            "stem": self.stem,
            "stopwords": sorted(self.stopwords),
        }

    @classmethod
    def from_manifest(cls, data: dict) -> "AnalysisConfig":
        return cls(
            remove_stopwords=bool(data["remove_stopwords"]),
            stem=bool(data["stem"]),
            stopwords=frozenset(data["stopwords"]),
        )


def split_tokens(text: str) -> list[str]:
    """Lowercase `text` and return maximal alphanumeric runs."""
    return _TOKEN_RE.findall(text.lower())


def analyze(text: str, config: AnalysisConfig | None = None) -> list[str]:
    """Produce the token stream for `text` under `config`.

    Deterministic; used identically for documents and queries.
    """
    if config is None:
        config = AnalysisConfig()
    tokens = split_tokens(text)
    if config.remove_stopwords:
        tokens = [t for t in tokens if t not in config.stopwords]
    if config.stem:
        tokens = [porter.stem(t) for t in tokens]
    return tokens
