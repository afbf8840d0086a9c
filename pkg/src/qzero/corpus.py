"""Knowledge-corpus loading and filtering.

The corpus file is UTF-8 with one JSON record per line. Required keys:
`id` (string), `text` (string), `categories` (array of strings);
optional `title`. Unknown keys are ignored. Records whose text has
fewer than 20 words, or that end up with no categories after
normalization, are dropped.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

logger = logging.getLogger(__name__)

MIN_CONTENT_WORDS = 20

_CATEGORY_PREFIX = "category:"


class CorpusError(ValueError):
    """Fatal corpus problem (e.g. duplicate document ids)."""


@dataclass(frozen=True)
class Document:
    """One knowledge-corpus article."""

    doc_id: str
    title: str
    content: str
    categories: tuple[str, ...]

    def __post_init__(self):
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")
        for c in self.categories:
            if not c or c != c.strip() or c.lower().startswith(_CATEGORY_PREFIX):
                raise ValueError(f"category not normalized: {c!r}")


@dataclass
class CorpusStats:
    """Ingestion tallies. Every well-formed record lands in exactly one of
    kept / dropped_short / dropped_no_category; a record failing both
    filters counts under dropped_short. Malformed lines never become
    records and are counted separately."""

    total_read: int = 0
    kept: int = 0
    dropped_short: int = 0
    dropped_no_category: int = 0
    malformed: int = 0

    def as_dict(self) -> dict:
        return {
            "total_read": self.total_read,
            "kept": self.kept,
            "dropped_short": self.dropped_short,
            "dropped_no_category": self.dropped_no_category,
            "malformed": self.malformed,
        }


def word_count(text: str) -> int:
    """Number of maximal non-whitespace runs in `text`."""
    return len(text.split())


def normalize_category(raw: str) -> str | None:
    """Trim and strip one leading case-insensitive "Category:" prefix.

    Returns None when nothing remains.
    """
    c = raw.strip()
    if c.lower().startswith(_CATEGORY_PREFIX):
        c = c[len(_CATEGORY_PREFIX):].strip()
    return c or None


def normalize_categories(raw: Iterable[str]) -> tuple[str, ...]:
    """Normalize every category, dropping empties, preserving order and duplicates."""
    out = []
    for r in raw:
        c = normalize_category(r)
        if c is not None:
            out.append(c)
    return tuple(out)


def _parse_record(line: str, line_no: int) -> Document | None:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as e:
        logger.warning("line %d: invalid JSON (%s); record skipped", line_no, e)
        return None
    if not isinstance(obj, dict):
        logger.warning("line %d: record is not an object; skipped", line_no)
        return None
    doc_id = obj.get("id")
    text = obj.get("text")
    categories = obj.get("categories")
    title = obj.get("title", "")
    if not isinstance(doc_id, str) or not doc_id:
        logger.warning("line %d: missing or invalid 'id'; record skipped", line_no)
        return None
    if not isinstance(text, str):
        logger.warning("line %d: missing or invalid 'text'; record skipped", line_no)
        return None
    if not isinstance(categories, list) or not all(isinstance(c, str) for c in categories):
        logger.warning("line %d: missing or invalid 'categories'; record skipped", line_no)
        return None
    if not isinstance(title, str):
        title = ""
    return Document(
        doc_id=doc_id,
        title=title,
        content=text,
        categories=normalize_categories(categories),
    )


def ingest(source: IO[str] | Iterable[str]) -> tuple[Iterator[Document], CorpusStats]:
    """Stream documents passing both filters out of a corpus file.

    Returns a lazy iterator plus a stats object that is complete once the
    iterator is exhausted. Memory stays bounded apart from the set of seen
    document ids (needed to report duplicates).

    Raises CorpusError from the iterator on a duplicate doc_id, naming both
    occurrences.
    """
    stats = CorpusStats()

    def generate() -> Iterator[Document]:
        seen: dict[str, int] = {}
        for line_no, line in enumerate(source, start=1):
            if not line.strip():
                continue
            doc = _parse_record(line, line_no)
            if doc is None:
                stats.malformed += 1
                continue
            if doc.doc_id in seen:
                raise CorpusError(
                    f"duplicate doc_id {doc.doc_id!r} at line {line_no} "
                    f"(first seen at line {seen[doc.doc_id]})"
                )
            seen[doc.doc_id] = line_no
            stats.total_read += 1
            if word_count(doc.content) < MIN_CONTENT_WORDS:
                stats.dropped_short += 1
                continue
            if not doc.categories:
                stats.dropped_no_category += 1
                continue
            stats.kept += 1
            yield doc

    return generate(), stats


def write_corpus(docs: Iterable[Document], out: IO[str]) -> int:
    """Serialize documents back to the line-delimited corpus format."""
    n = 0
    for doc in docs:
        rec = {
            "id": doc.doc_id,
            "title": doc.title,
            "text": doc.content,
            "categories": list(doc.categories),
        }
        out.write(json.dumps(rec, ensure_ascii=False) + "\n")
        n += 1
    return n
